#include "worldsheet/singular.hpp"
#include "worldsheet/surface.hpp"

namespace worldsheet {

namespace {

double wrap_pi(double a) { return a - kTwoPi * std::round(a / kTwoPi); }

std::vector<double> lift_table(const std::function<Vec(double)>& v, double E0, int n) {
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const Vec p = v(E0 * i / n);
    const double raw = std::atan2(p[1], p[0]);
    out[i] = i == 0 ? raw : out[i - 1] + wrap_pi(raw - out[i - 1]);
  }
  return out;
}

constexpr double kZero = 1e-12;

}  // namespace

TwoDAngleState::TwoDAngleState(const OrthogonalGauge& g, int table) : g_(&g), E0_(g.E0) {
  if (g.dim() != 2) throw PreconditionError("angle state requires n = 2");
  ta_ = lift_table([&g](double x) { return g.a.tangent(x); }, E0_, table);
  tb_ = lift_table([&g](double x) { return Vec(-g.b.tangent(x)); }, E0_, table);
  wa_ = static_cast<int>(std::lround((ta_.back() - ta_.front()) / kTwoPi));
  wb_ = static_cast<int>(std::lround((tb_.back() - tb_.front()) / kTwoPi));
  // Choose alpha + 2 pi k maximizing the overlap of the angle ranges over one period.
  const auto [amin, amax] = std::minmax_element(ta_.begin(), ta_.end());
  const auto [bmin, bmax] = std::minmax_element(tb_.begin(), tb_.end());
  const int k0 = static_cast<int>(std::lround((0.5 * (*bmin + *bmax) - 0.5 * (*amin + *amax)) / kTwoPi));
  double best = -1.0;
  for (int k = k0 - 3; k <= k0 + 3; ++k) {
    const double lo = std::max(*amin + kTwoPi * k, *bmin);
    const double hi = std::min(*amax + kTwoPi * k, *bmax);
    const double overlap = hi - lo;
    if (overlap > best + 1e-12 || (std::abs(overlap - best) <= 1e-12 && std::abs(k) < std::abs(shift_))) {
      best = overlap;
      shift_ = k;
    }
  }
}

double TwoDAngleState::lifted(const std::vector<double>& table, int winding, const Vec& v,
                              double x) const {
  const int n = static_cast<int>(table.size()) - 1;
  const double turns = std::floor(x / E0_);
  const double r = (x - turns * E0_) / E0_ * n;
  const int i = std::min(n - 1, static_cast<int>(r));
  const double u = r - i;
  const double approx = (1 - u) * table[i] + u * table[i + 1] + kTwoPi * winding * turns;
  // Snap the exact atan2 onto the branch of the interpolated lift.
  const double raw = std::atan2(v[1], v[0]);
  return raw + kTwoPi * std::round((approx - raw) / kTwoPi);
}

double TwoDAngleState::alpha(double x) const {
  return lifted(ta_, wa_, g_->a.tangent(x), x) + kTwoPi * shift_;
}

double TwoDAngleState::beta(double x) const {
  return lifted(tb_, wb_, Vec(-g_->b.tangent(x)), x);
}

Vec tangent_formula(const TwoDAngleState& state, double t, double x) {
  const double F = state.F(t, x), G = state.G(t, x);
  const double s = std::sin(0.5 * F);
  if (std::abs(s) <= kZero) throw PreconditionError("tangent formula is undefined at a singular point");
  Vec v(2);
  v << -std::sin(0.5 * G), std::cos(0.5 * G);
  return s > 0 ? v : Vec(-v);
}

Vec unit_tangent(const OrthogonalGauge& g, double t, double x) {
  const Vec gx = derivatives(g, t, x).gamma_x;
  const double r = gx.norm();
  if (r <= 1e-14) throw PreconditionError("unit tangent is undefined at a singular point");
  return gx / r;
}

namespace {

int sign_at(const TwoDAngleState& st, double t, double x) {
  const double s = std::sin(0.5 * st.F(t, x));
  return std::abs(s) <= kZero ? 0 : (s > 0 ? 1 : -1);
}

// tau = sign i e^{iG/2} without the singular-point guard.
Vec tau_from(int sign, double G) {
  Vec v(2);
  v << -std::sin(0.5 * G), std::cos(0.5 * G);
  return sign >= 0 ? v : Vec(-v);
}

// Outermost point of the zero run of sin(F/2) starting at x and moving in direction dir.
double run_end(const TwoDAngleState& st, double t, double x, int dir, double limit, bool* hit_limit) {
  const double E0 = st.E0();
  const double step = E0 / 65536.0;
  double inside = x;
  double probe = x + dir * step;
  *hit_limit = false;
  while (sign_at(st, t, probe) == 0) {
    inside = probe;
    probe += dir * step;
    if (std::abs(probe - x) > limit) {
      *hit_limit = true;
      return inside;
    }
  }
  // Bisect between the last zero sample and the first nonzero sample.
  double lo = inside, hi = probe;
  for (int it = 0; it < 60 && std::abs(hi - lo) > 1e-14 * E0; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sign_at(st, t, mid) == 0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

SingStar classify_point_2d(const TwoDAngleState& st, double t, double x, double* gap) {
  const double E0 = st.E0();
  const double eps = 1e-6 * E0;
  bool left_full = false, right_full = false;
  const double s0 = run_end(st, t, x, -1, 0.5 * E0, &left_full);
  const double s1 = run_end(st, t, x, +1, 0.5 * E0, &right_full);
  if (left_full || right_full) {
    // gamma_x vanishes on the whole slice: compare the unoriented tangent lines on both sides
    // of the slice along fixed x.
    double worst = 0.0;
    for (double r : {1e-4 * E0, 1e-5 * E0, 1e-6 * E0}) {
      const Vec lo = tau_from(sign_at(st, t - r, x), st.G(t - r, x));
      const Vec hi = tau_from(sign_at(st, t + r, x), st.G(t + r, x));
      worst = std::acos(std::clamp(std::abs(lo.dot(hi)), 0.0, 1.0));
    }
    if (gap) *gap = worst;
    return worst <= 1e-4 ? SingStar::No : SingStar::Yes;
  }
  const int sl = sign_at(st, t, s0 - eps);
  const int sr = sign_at(st, t, s1 + eps);
  const Vec tl = tau_from(sl, st.G(t, s0 - eps));
  const Vec tr = tau_from(sr, st.G(t, s1 + eps));
  if (gap) *gap = std::acos(std::clamp(tl.dot(tr), -1.0, 1.0));
  if (s1 - s0 <= 2.0 * E0 / 65536.0) {
    // Isolated zero in x: tau flips exactly when sin(F/2) changes sign.
    return sl != sr ? SingStar::Yes : SingStar::No;
  }
  // Zero interval [s0, s1]: the one-sided limits agree iff the signs are opposite and
  // (G(s1) - G(s0)) / 2 = pi mod 2 pi.
  const double jump = 0.5 * (st.G(t, s1) - st.G(t, s0));
  const bool g_jump = std::abs(wrap_pi(jump - kPi)) <= 1e-6;
  return (sl == -sr && g_jump) ? SingStar::No : SingStar::Yes;
}

namespace {

// Angular diameter of the set of tangents sampled on a circle of radius r around (t, x).
double annulus_oscillation(const OrthogonalGauge& g, double t, double x, double r) {
  std::vector<Vec> taus;
  for (int k = 0; k < 48; ++k) {
    const double th = kTwoPi * (k + 0.5) / 48;
    const Vec gx = derivatives(g, t + r * std::cos(th), x + r * std::sin(th)).gamma_x;
    if (gx.norm() > 1e-14) taus.push_back(gx / gx.norm());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    for (std::size_t j = i + 1; j < taus.size(); ++j) worst = std::max(worst, angle_between(taus[i], taus[j]));
  }
  return worst;
}

}  // namespace

SingComponent classify_sing_star(const OrthogonalGauge& g, const SingComponent& component) {
  SingComponent out = component;
  out.pair_flags.clear();
  out.tangent_gap = 0.0;
  if (g.dim() == 2) {
    const TwoDAngleState st(g);
    for (const auto& p : component.pairs) {
      double gap = 0.0;
      out.pair_flags.push_back(classify_point_2d(st, p.t, p.x, &gap));
      out.tangent_gap = std::max(out.tangent_gap, gap);
    }
  } else {
    for (const auto& p : component.pairs) {
      double osc = 0.0;
      for (double r = 1e-3 * g.E0; r >= 1e-6 * g.E0; r *= 0.25) osc = annulus_oscillation(g, p.t, p.x, r);
      out.tangent_gap = std::max(out.tangent_gap, osc);
      out.pair_flags.push_back(osc > 1e-2 ? SingStar::Yes : (osc < 1e-4 ? SingStar::No : SingStar::Undetermined));
    }
  }
  bool any_yes = false, all_no = true;
  for (auto f : out.pair_flags) {
    any_yes |= f == SingStar::Yes;
    all_no &= f == SingStar::No;
  }
  out.sing_star = any_yes ? SingStar::Yes : (all_no ? SingStar::No : SingStar::Undetermined);
  return out;
}

void classify_all(const OrthogonalGauge& g, SingularityReport& report) {
  for (auto& c : report.components) c = classify_sing_star(g, c);
}

std::vector<double> null_tangent_check(const OrthogonalGauge& g, const SingularPair& pair,
                                       const std::vector<double>& radii) {
  const Vec gt = derivatives(g, pair.t, pair.x).gamma_t;
  std::vector<double> out;
  for (double r : radii) {
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const double th = kTwoPi * (k + 0.5) / 64;
      const Vec gx = derivatives(g, pair.t + r * std::cos(th), pair.x + r * std::sin(th)).gamma_x;
      if (gx.norm() <= 1e-14) continue;
      worst = std::max(worst, std::abs(gx.dot(gt)) / gx.norm());
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<double> null_tangent_check(const OrthogonalGauge& g, const std::vector<double>& radii) {
  const auto rep = find_antipodal_pairs(g);
  if (rep.pairs.empty()) throw PreconditionError("null_tangent_check: gauge has no singular pairs");
  return null_tangent_check(g, rep.pairs.front(), radii);
}

double TimeExtent::total_length() const {
  double s = 0.0;
  for (const auto& i : sing_star) s += i.hi - i.lo;
  return s;
}

TimeExtent sing_star_time_extent(const OrthogonalGauge& g, int nt, int nx) {
  if (g.dim() != 2) throw PreconditionError("sing_star_time_extent requires n = 2");
  const TwoDAngleState st(g);
  const double E0 = g.E0;
  TimeExtent ext;
  std::vector<char> marked(nt, 0);
  for (int k = 0; k < nt; ++k) {
    const double t = E0 * k / nt;
    std::vector<int> sg(nx);
    int zeros = 0;
    for (int j = 0; j < nx; ++j) {
      sg[j] = sign_at(st, t, E0 * j / nx);
      zeros += sg[j] == 0;
    }
    if (zeros == nx) {
      ext.full_slices.push_back(t);
      if (classify_point_2d(st, t, 0.0) == SingStar::Yes) marked[k] = 1;
      continue;
    }
    // Walk the circle starting just after a nonzero sample.
    const int start = static_cast<int>(std::find_if(sg.begin(), sg.end(), [](int v) { return v != 0; }) - sg.begin());
    for (int j = 0; j < nx && !marked[k]; ++j) {
      const int i0 = (start + j) % nx, i1 = (start + j + 1) % nx;
      if (sg[i0] == 0) continue;
      if (sg[i1] != 0) {
        if (sg[i1] != sg[i0]) marked[k] = 1;  // transversal crossing of F = 2 pi m
        continue;
      }
      // zero run: classify at its first zero sample
      if (classify_point_2d(st, t, E0 * ((start + j + 1) % nx) / nx) == SingStar::Yes) marked[k] = 1;
    }
  }
  // Maximal runs of marked samples, merged across t = 0.
  int first_unmarked = -1;
  for (int k = 0; k < nt; ++k) {
    if (!marked[k]) {
      first_unmarked = k;
      break;
    }
  }
  if (first_unmarked < 0) {
    ext.sing_star.push_back({0.0, E0});
    return ext;
  }
  for (int j = 1; j <= nt; ++j) {
    const int k = (first_unmarked + j) % nt;
    if (!marked[k]) continue;
    int len = 0;
    while (marked[(k + len) % nt] && len < nt) ++len;
    const double lo = E0 * k / nt;
    ext.sing_star.push_back({lo, lo + E0 * (len - 1) / nt});
    j += len - 1;
  }
  return ext;
}

}  // namespace worldsheet
