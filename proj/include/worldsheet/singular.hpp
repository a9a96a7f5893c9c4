#pragma once

#include "worldsheet/gauge.hpp"

#include <string>
#include <vector>

namespace worldsheet {

/// A zero of a'(s) + b'(sigma), i.e. a point where gamma_x vanishes.
struct SingularPair {
  double s = 0.0, sigma = 0.0;
  double residual = 0.0;  // |a'(s) + b'(sigma)|
  double t = 0.0, x = 0.0;  // t = (s - sigma)/2 canonicalized to [0, E0/2), x = (s + sigma)/2
  Vec point;                // psi(t, x) = (t, gamma(t, x)) in R^{1+n}
};

enum class SingKind { Isolated, CurveSegment, FullTimeSlice };
enum class SingStar { Yes, No, Undetermined };

std::string to_string(SingKind kind);
std::string to_string(SingStar flag);

struct SingComponent {
  std::vector<SingularPair> pairs;
  SingKind kind = SingKind::Isolated;
  SingStar sing_star = SingStar::Undetermined;
  std::vector<SingStar> pair_flags;  // per-pair classification when it varies along the component
  double tangent_gap = 0.0;          // oscillation of gamma_x/|gamma_x| near the component (rad)
  double t_min = 0.0, t_max = 0.0;
};

struct DetectOptions {
  int grid_n = 512;
  double tol = -1.0;  // epsilon_sing; negative selects 1e-8 (analytic) or 1e-5 (sphere paths)
  int threads = 0;
};

struct SingularityReport {
  std::vector<SingularPair> pairs;
  std::vector<SingComponent> components;
  double min_residual = 0.0;  // min over the torus of |a'(s) + b'(sigma)| (refined)
  double eps_sing = 1e-8;
  int grid_n = 0;
  std::vector<std::string> warnings;
  bool empty() const { return pairs.empty(); }
};

/// Default residual threshold for a gauge's representation.
double sing_tolerance(const OrthogonalGauge& g);

/// Coarse torus grid of |a'(s) + b'(sigma)|^2, Gauss-Newton refinement from local minima
/// and near-zero cells, deduplication at 2 E0/grid_n and clustering into components.
SingularityReport find_antipodal_pairs(const OrthogonalGauge& g, const DetectOptions& opt = {});

/// Maps (s, sigma) to a pair with canonical (t, x) and the spacetime point.
SingularPair make_pair(const OrthogonalGauge& g, double s, double sigma);

/// Levenberg-Marquardt descent on |a'(s) + b'(sigma)| from the given start.
struct TangentSumMinimum {
  double s = 0.0, sigma = 0.0, residual = 0.0;
};
TangentSumMinimum minimize_tangent_sum(const OrthogonalGauge& g, double s, double sigma);

struct ImmersionCheck {
  bool immersed = false;
  double margin = 0.0;  // min |a'(s) + b'(sigma)|
};
ImmersionCheck is_global_immersion(const OrthogonalGauge& g, int grid_n = 512);

// ---- n = 2 angle machinery ----

/// Lifted angles with a' = e^{i alpha}, -b' = e^{i beta}; alpha shifted by 2 pi k to maximize
/// the overlap of the two angle ranges.
class TwoDAngleState {
 public:
  explicit TwoDAngleState(const OrthogonalGauge& g, int table = 8192);
  double alpha(double x) const;
  double beta(double x) const;
  double F(double t, double x) const { return alpha(x + t) - beta(x - t); }
  double G(double t, double x) const { return alpha(x + t) + beta(x - t); }
  double E0() const { return E0_; }
  int alpha_shift() const { return shift_; }

 private:
  double lifted(const std::vector<double>& table, int winding, const Vec& v, double x) const;
  const OrthogonalGauge* g_;
  double E0_;
  std::vector<double> ta_, tb_;
  int wa_, wb_, shift_ = 0;
};

/// sign(sin(F/2)) i e^{iG/2} as a plane vector; throws at singular points.
Vec tangent_formula(const TwoDAngleState& state, double t, double x);

/// gamma_x / |gamma_x| evaluated directly; throws at singular points.
Vec unit_tangent(const OrthogonalGauge& g, double t, double x);

/// Classifies a component (n = 2 by the sign/G-jump rule per point, n >= 3 by tangent
/// oscillation over shrinking annuli).
SingComponent classify_sing_star(const OrthogonalGauge& g, const SingComponent& component);
void classify_all(const OrthogonalGauge& g, SingularityReport& report);

/// Sing* classification of the singular point (t, x) of an n = 2 gauge.
SingStar classify_point_2d(const TwoDAngleState& state, double t, double x, double* gap = nullptr);

/// Max |tau(q) . gamma_t(p)| over punctured circles of the given radii around the pair.
std::vector<double> null_tangent_check(const OrthogonalGauge& g, const SingularPair& pair,
                                       const std::vector<double>& radii);
/// Same, on the first detected pair; throws PreconditionError when there is none.
std::vector<double> null_tangent_check(const OrthogonalGauge& g, const std::vector<double>& radii);

struct TimeInterval {
  double lo = 0.0, hi = 0.0;
};

struct TimeExtent {
  std::vector<TimeInterval> sing_star;  // maximal sampled t-intervals carrying Sing* points
  std::vector<double> full_slices;      // times where gamma_x vanishes on the whole slice
  double total_length() const;
};

/// n = 2: scans t over [0, E0) and reports where Sing* points exist.
TimeExtent sing_star_time_extent(const OrthogonalGauge& g, int nt = 512, int nx = 2048);

}  // namespace worldsheet
