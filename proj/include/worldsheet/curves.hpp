#pragma once

#include "worldsheet/types.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace worldsheet {

/// How the unit tangent of a curve is represented.
enum class TangentKind { Analytic, AngleFunction, SpherePath };

std::string to_string(TangentKind kind);

/// Representation tolerance on | |tangent| - 1 |.
double unit_tolerance(TangentKind kind);

/// Planar angle representation a'(x) = (cos alpha(x), sin alpha(x)), with
/// alpha(x + P) = alpha(x) + 2 pi winding.
struct AngleRep {
  std::function<double(double)> alpha;
  std::function<double(double)> dalpha;
  int winding = 1;
};

struct ClosureReport {
  double defect = 0.0;
  bool closed = false;
};

/// A periodic curve in R^n parametrized by arclength.
///
/// The tangent is the primary data; positions are recovered as
/// basepoint + integral of the tangent. The tangent is periodic with the curve's
/// period, the position in general only up to the drift (integral over one period).
/// Instances are immutable and cheap to copy (shared internal tables).
class UnitSpeedCurve {
 public:
  using TangentFn = std::function<Vec(double)>;
  using PositionFn = std::function<Vec(double)>;

  struct Options {
    TangentKind kind = TangentKind::Analytic;
    int smoothness = 1;
    std::string name = "curve";
    TangentFn derivative;          // optional exact a''
    PositionFn position;           // optional closed-form a (including basepoint)
    std::optional<AngleRep> angle; // only for planar curves
    nlohmann::json spec;           // serializable description, empty if none
    int cells = 1024;              // cumulative-integral table resolution
    std::vector<double> breaks;    // known kinks of the tangent within [0, P)
  };

  UnitSpeedCurve(int dim, double period, Vec basepoint, TangentFn tangent, Options options);

  // Closed-form families.
  /// Circle traversed at unit speed in the plane spanned by orthonormal u, v:
  /// a'(x) = cos(theta) u + sin(theta) v, theta = 2 pi x / P + phase.
  static UnitSpeedCurve planar_circle(const Vec& u, const Vec& v, double period, double phase,
                                      const Vec& basepoint, int turns = 1);
  /// Unit circle in R^2 with a(0) = (1, 0), counter-clockwise, period 2 pi.
  static UnitSpeedCurve unit_circle();
  /// Planar curve with angle function alpha(x) = 2 pi w x / P + phase + sum_k c_k cos + s_k sin.
  static UnitSpeedCurve fourier_angle(double period, int winding, double phase,
                                      std::vector<double> cos_coeffs,
                                      std::vector<double> sin_coeffs, const Vec& basepoint);
  /// Planar curve from an arbitrary continuous lifted angle function.
  static UnitSpeedCurve from_angle(AngleRep angle, double period, const Vec& basepoint,
                                   std::string name, int smoothness = 3);
  /// Tangent w(x)/|w(x)| of a trigonometric vector field
  /// w(x) = sum_k C_k cos(2 pi k x/P) + S_k sin(2 pi k x/P).
  static UnitSpeedCurve fourier_field(double period, std::vector<int> harmonics,
                                      std::vector<Vec> cos_coeffs, std::vector<Vec> sin_coeffs,
                                      const Vec& basepoint);
  /// Periodic samples of the tangent on S^{n-1}, interpolated by normalized Catmull-Rom.
  static UnitSpeedCurve sphere_path(std::vector<Vec> samples, double period,
                                    const Vec& basepoint);

  int dim() const { return dim_; }
  double period() const { return period_; }
  const Vec& basepoint() const { return basepoint_; }
  TangentKind kind() const { return options_->kind; }
  int smoothness() const { return options_->smoothness; }
  const std::string& name() const { return options_->name; }
  const nlohmann::json& spec() const { return options_->spec; }
  const std::optional<AngleRep>& angle() const { return options_->angle; }
  const std::vector<double>& breaks() const { return options_->breaks; }

  Vec tangent(double x) const { return tangent_(x); }
  /// a''(x); central differences if no exact derivative was supplied.
  Vec tangent_derivative(double x) const;
  /// basepoint + integral_0^x tangent.
  Vec eval(double x) const;
  /// Integral of the tangent over one period.
  const Vec& drift() const { return drift_; }

  const TangentFn& tangent_fn() const { return tangent_; }

  /// Same tangent, different basepoint.
  UnitSpeedCurve with_basepoint(const Vec& basepoint) const;

  /// max | |a'(x)| - 1 | over `samples` equispaced points of one period.
  double unit_speed_violation(int samples = 10000) const;

 private:
  Vec integrate_cell(double from, double to) const;
  void build_table();

  int dim_;
  double period_;
  Vec basepoint_;
  TangentFn tangent_;
  std::shared_ptr<const Options> options_;
  struct Table {
    std::vector<double> nodes;  // ascending, nodes.front() == 0, nodes.back() == period
    std::vector<Vec> cumulative;
  };
  std::shared_ptr<const Table> table_;
  Vec drift_;
};

/// |eval(P) - eval(0)|, closed iff <= 1e-6 P.
ClosureReport closure_defect(const UnitSpeedCurve& curve);

/// Samples x_i, a(x_i), a'(x_i) for export, m points over one period.
struct CurveSamples {
  std::vector<double> x;
  std::vector<Vec> position;
  std::vector<Vec> tangent;
};
CurveSamples sample_curve(const UnitSpeedCurve& curve, int m);

}  // namespace worldsheet
