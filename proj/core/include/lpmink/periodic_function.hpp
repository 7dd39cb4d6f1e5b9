#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace lpmink {

inline constexpr int kDefaultGridSize = 256;

// How derivatives of a sampled function are evaluated.
enum class GridDerivative { Spectral, CenteredFd4 };

// A real 2*pi-periodic function with evaluable first and second derivatives.
//
// Three representations:
//   - Fourier: constant + cosine/sine coefficient lists, derivatives exact.
//   - Samples: uniform grid starting at theta = 0 (even size >= 16); values at
//     arbitrary angles come from trigonometric interpolation, derivatives are
//     spectral (termwise) or 4th-order centered differences on interpolated
//     values.
//   - Analytic: closures for the value and its derivatives. Used internally
//     for functions that no finite grid represents faithfully (xi diverges at
//     the poles); serialization samples such functions onto a grid.
class PeriodicFunction {
 public:
  static PeriodicFunction constant(double c);
  static PeriodicFunction fourier(double c0, std::vector<double> cos_coeffs,
                                  std::vector<double> sin_coeffs);
  static PeriodicFunction samples(std::vector<double> values,
                                  GridDerivative deriv = GridDerivative::Spectral);
  static PeriodicFunction analytic(std::function<double(double)> f0,
                                   std::function<double(double)> f1 = nullptr,
                                   std::function<double(double)> f2 = nullptr);

  double operator()(double theta) const { return eval(theta, 0); }
  // order in {0, 1, 2}
  double eval(double theta, int order) const;

  bool is_fourier() const;
  bool is_samples() const;
  bool is_analytic() const;

  // Natural grid size: sample count for grids, kDefaultGridSize otherwise.
  int grid_size() const;
  std::vector<double> sample_values(int n) const;
  // Values at the natural grid nodes.
  std::vector<double> grid_values() const;

  double min_on_grid(int oversample = 1) const;
  double max_on_grid(int oversample = 1) const;

  // Trapezoid rule on the natural grid (spectrally accurate for smooth
  // periodic integrands).
  double integrate() const;

  // Fourier view (exact for fourier reps, interpolation coefficients for
  // grids; throws for analytic reps). No in-class initializers here: the
  // struct participates in a variant member of the enclosing class.
  struct Coefficients {
    double c0;                  // constant term
    std::vector<double> a, b;   // cos/sin, index k-1 holds harmonic k
  };
  const Coefficients& coefficients() const;

  GridDerivative grid_derivative_method() const;

 private:
  struct FourierRep {
    Coefficients c;
  };
  struct GridRep {
    std::vector<double> v;
    GridDerivative deriv;
    mutable std::shared_ptr<const Coefficients> interp;  // lazy
  };
  struct AnalyticRep {
    std::function<double(double)> f0, f1, f2;
  };

  std::variant<FourierRep, GridRep, AnalyticRep> rep_;

  const Coefficients& interp_coefficients(const GridRep& g) const;
};

// Pointwise helpers on a common grid.
PeriodicFunction pf_axpby(double a, const PeriodicFunction& x, double b, const PeriodicFunction& y,
                          int n = kDefaultGridSize);

}  // namespace lpmink
