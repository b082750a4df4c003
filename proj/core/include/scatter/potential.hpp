#pragma once

#include <limits>
#include <string>
#include <variant>

/// Dimensionless repulsive central potentials (hbar = 1, m = 1 after rescaling).
///
/// Each family carries its coupling G in the convention of its own rescaled
/// Hamiltonian. `value` returns that family's V_G(r); the term that enters the
/// radial equation u'' = [l(l+1)/r^2 + U(r) - k^2] u is U = lambda * V_G, with
/// lambda = 1 for the square barrier and the singular family and lambda = 2 for
/// Yukawa (whose Hamiltonian is p^2/2 + G e^{-r}/r). Every scattering scheme
/// consumes U through `radial` and the reduced moments below.
namespace scatter {

struct SquareBarrier {
  double G;
  double R = 1.0;
};

struct Singular {
  double G;
  int N;
};

struct Yukawa {
  double G;
};

enum class Family { Square, Singular, Yukawa };

class Potential {
 public:
  using Variant = std::variant<SquareBarrier, Singular, Yukawa>;

  /// Validates G >= 0, R > 0, N >= 2. G = 0 is accepted as the free case.
  explicit Potential(Variant v);

  static Potential square(double G, double R = 1.0) { return Potential(SquareBarrier{G, R}); }
  static Potential singular(double G, int N) { return Potential(Singular{G, N}); }
  static Potential yukawa(double G) { return Potential(Yukawa{G}); }

  Family family() const noexcept;
  const Variant& variant() const noexcept { return v_; }
  double coupling() const noexcept;
  /// Same family and shape, different coupling.
  Potential with_coupling(double G) const;
  std::string describe() const;

  /// U / V_G for this family.
  double radial_factor() const noexcept;
  /// Radius beyond which V vanishes identically (infinity if not compact).
  double support_radius() const noexcept;

  /// V_G(r), r > 0.
  double value(double r) const;
  /// T(r) = int_r^inf s V_G(s) ds. Singular requires r > 0.
  double tail_moment(double r) const;
  /// Y(rho) = int_{-inf}^{inf} V_G(sqrt(s^2 + rho^2)) ds, rho > 0.
  double chord_integral(double rho) const;
  /// int_0^r y^2 V_G(y) dy; square barrier and Yukawa only.
  double interior_moment(double r) const;
  /// int_z^inf V_G(sqrt(s^2 + rho^2)) ds for any real z, rho > 0.
  double line_tail(double rho, double z) const;

  /// U(r) = 2 m V(r).
  double radial(double r) const { return radial_factor() * value(r); }
  /// m Y(rho) = (lambda / 2) Y(rho): the phase that straight-line schemes accumulate.
  double reduced_chord(double rho) const { return 0.5 * radial_factor() * chord_integral(rho); }
  /// m V = U / 2, the weight in the Euclidean path integral.
  double path_weight(double r) const { return 0.5 * radial(r); }

 private:
  Variant v_;
};

}  // namespace scatter
