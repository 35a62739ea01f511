#pragma once

// Globally adaptive Gauss-Kronrod (10, 21) quadrature, generic over the
// floating type. Node tables are stored as 40-digit literals and parsed once
// per type, so quad-precision integration gets quad-accurate nodes.

#include "summa/error.hpp"
#include "summa/real.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

namespace summa {

template <RealType Real>
struct QuadratureOptions {
  Real abs_tol = Real(1e-12);
  Real rel_tol = Real(0);
  std::size_t max_evaluations = 1'000'000;
};

template <RealType Real>
struct QuadratureResult {
  Real value{};
  Real error{};
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

namespace detail {

template <RealType Real>
struct GaussKronrod21 {
  // Kronrod abscissae on [0, 1): odd indices are the Gauss points.
  std::array<Real, 11> x;
  std::array<Real, 11> wk;
  std::array<Real, 5> wg;  // weights of the Gauss points x[1], x[3], ..., x[9]

  static const GaussKronrod21& get() {
    static const GaussKronrod21 table = make();
    return table;
  }

 private:
  static GaussKronrod21 make() {
    static constexpr const char* xs[11] = {
        "0.9956571630258080807355272806890028479213", "0.9739065285171717200779640120844520534283",
        "0.9301574913557082260012071800595083462252", "0.8650633666889845107320966884234930485275",
        "0.7808177265864168970637175783450423771634", "0.6794095682990244062343273651148735757693",
        "0.5627571346686046833390000992726941408430", "0.4333953941292471907992659431657841622001",
        "0.2943928627014601981311266031038655661627", "0.1488743389816312108848260011297199846176",
        "0"};
    static constexpr const char* wks[11] = {
        "0.01169463886737187427806439606219204839622", "0.03255816230796472747881897245938976061739",
        "0.05475589657435199603138130024458017637372", "0.07503967481091995276704314091619000939522",
        "0.09312545458369760553506546508336634439002", "0.1093871588022976418992105903258049602718",
        "0.1234919762620658510779581098310741595123", "0.1347092173114733259280540017717068327610",
        "0.1427759385770600807970942731387170608860", "0.1477391049013384913748415159720680455237",
        "0.1494455540029169056649364683898212037452"};
    static constexpr const char* wgs[5] = {
        "0.06667134430868813759356880989333179285786", "0.1494513491505805931457763396576973324026",
        "0.2190863625159820439955349342281631924588", "0.2692667193099963550912269215694693528598",
        "0.2955242247147528701738929946513383294210"};
    GaussKronrod21 t{};
    for (int i = 0; i < 11; ++i) {
      t.x[i] = parse_real<Real>(xs[i]);
      t.wk[i] = parse_real<Real>(wks[i]);
    }
    for (int i = 0; i < 5; ++i) t.wg[i] = parse_real<Real>(wgs[i]);
    return t;
  }
};

template <RealType Real>
struct Segment {
  Real a, b, value, error;
  std::size_t order;  // creation order, breaks ties deterministically
};

template <RealType Real>
struct SegmentLess {
  bool operator()(const Segment<Real>& l, const Segment<Real>& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.order > r.order;
  }
};

// One GK21 panel with the QUADPACK error scaling.
template <RealType Real, class F>
Segment<Real> gk21_panel(F& f, Real a, Real b, std::size_t order) {
  using std::abs;
  using std::min;
  using std::pow;
  const auto& t = GaussKronrod21<Real>::get();
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;

  std::array<Real, 21> fv;
  const Real fc = static_cast<Real>(f(center));
  Real resk = t.wk[10] * fc;
  Real resg = 0;
  Real resabs = abs(resk);
  for (int i = 0; i < 10; ++i) {
    const Real dx = half * t.x[i];
    const Real f1 = static_cast<Real>(f(center - dx));
    const Real f2 = static_cast<Real>(f(center + dx));
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    resk += t.wk[i] * (f1 + f2);
    resabs += t.wk[i] * (abs(f1) + abs(f2));
    if (i % 2 == 1) resg += t.wg[i / 2] * (f1 + f2);
  }
  const Real mean = resk / 2;
  Real resasc = t.wk[10] * abs(fc - mean);
  for (int i = 0; i < 10; ++i) {
    resasc += t.wk[i] * (abs(fv[2 * i] - mean) + abs(fv[2 * i + 1] - mean));
  }
  const Real ah = abs(half);
  Real err = abs((resk - resg) * half);
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0 && err != 0) {
    err = resasc * min(Real(1), pow(Real(200) * err / resasc, Real(1.5)));
  }
  const Real floor = Real(50) * epsilon<Real>() * resabs;
  if (resabs > std::numeric_limits<Real>::min() / (Real(50) * epsilon<Real>())) {
    err = std::max(err, floor);
  }
  return {a, b, resk * half, err, order};
}

}  // namespace detail

/// Integrate f over consecutive intervals [p0,p1], [p1,p2], ... Breakpoints
/// must be non-decreasing; integrable kinks or jumps belong on breakpoints.
template <RealType Real, class F>
QuadratureResult<Real> integrate(F&& f, const std::vector<Real>& breakpoints,
                                 const QuadratureOptions<Real>& opts) {
  using std::abs;
  if (breakpoints.size() < 2) throw domain_error("integrate: need at least two breakpoints");
  if (!(opts.abs_tol > 0) && !(opts.rel_tol > 0)) {
    throw domain_error("integrate: a positive tolerance is required");
  }

  std::priority_queue<detail::Segment<Real>, std::vector<detail::Segment<Real>>,
                      detail::SegmentLess<Real>>
      heap;
  std::size_t order = 0;
  std::size_t evaluations = 0;
  Real total = 0;
  Real total_err = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] < breakpoints[i]) throw domain_error("integrate: breakpoints must increase");
    if (breakpoints[i + 1] == breakpoints[i]) continue;
    auto seg = detail::gk21_panel<Real>(f, breakpoints[i], breakpoints[i + 1], order++);
    evaluations += 21;
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * abs(total)); };

  while (!heap.empty() && total_err > target()) {
    if (evaluations + 42 > opts.max_evaluations) {
      throw quadrature_error("integrate: evaluation budget of " + std::to_string(opts.max_evaluations) +
                             " exhausted before reaching tolerance");
    }
    const auto worst = heap.top();
    const Real mid = (worst.a + worst.b) / 2;
    if (!(mid > worst.a) || !(mid < worst.b)) {
      throw quadrature_error("integrate: interval cannot be bisected further (round-off limit)");
    }
    heap.pop();
    const auto left = detail::gk21_panel<Real>(f, worst.a, mid, order++);
    const auto right = detail::gk21_panel<Real>(f, mid, worst.b, order++);
    evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);

    if (total_err <= target()) {
      // Recompute without running-sum drift before accepting.
      std::vector<detail::Segment<Real>> all;
      all.reserve(heap.size());
      auto copy = heap;
      while (!copy.empty()) {
        all.push_back(copy.top());
        copy.pop();
      }
      std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
      total = 0;
      total_err = 0;
      for (const auto& s : all) {
        total += s.value;
        total_err += s.error;
      }
    }
  }

  QuadratureResult<Real> result;
  result.value = total;
  result.error = total_err;
  result.evaluations = evaluations;
  result.intervals = heap.size();
  return result;
}

template <RealType Real, class F>
QuadratureResult<Real> integrate(F&& f, Real a, Real b, const QuadratureOptions<Real>& opts) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate<Real>(std::forward<F>(f), std::vector<Real>{b, a}, opts);
    r.value = -r.value;
    return r;
  }
  return integrate<Real>(std::forward<F>(f), std::vector<Real>{a, b}, opts);
}

/// Convenience: value only, absolute tolerance.
template <RealType Real, class F>
Real integrate_value(F&& f, Real a, Real b, Real abs_tol) {
  QuadratureOptions<Real> opts;
  opts.abs_tol = abs_tol;
  return integrate<Real>(std::forward<F>(f), a, b, opts).value;
}

}  // namespace summa
