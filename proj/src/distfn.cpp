#include "maxalg/distfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "maxalg/kernels.hpp"
#include "maxalg/scalar_ops.hpp"

namespace maxalg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketCap = 1e9;
constexpr double kBisectTolX = 1e-10;
constexpr int kBisectMaxIter = 200;

using detail::clamp01;

std::vector<double> merge_sorted(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> with_point(std::vector<double> v, double x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
  return v;
}

SupportClass meet_restrictive(SupportClass a, SupportClass b) {
  return static_cast<SupportClass>(std::max(static_cast<int>(a), static_cast<int>(b)));
}

SupportClass weakest(SupportClass a, SupportClass b) {
  return static_cast<SupportClass>(std::min(static_cast<int>(a), static_cast<int>(b)));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace

const char* support_class_name(SupportClass c) {
  switch (c) {
    case SupportClass::Whole: return "whole-line";
    case SupportClass::NonNegative: return "nonnegative";
    case SupportClass::Positive: return "positive";
  }
  return "?";
}

const char* conv_name(Conv c) {
  switch (c) {
    case Conv::Classical: return "classical";
    case Conv::Free: return "free";
    case Conv::Bool: return "bool";
  }
  return "?";
}

// --- DistFn lifecycle --------------------------------------------------------

DistFn::DistFn() = default;
DistFn::DistFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
DistFn::~DistFn() = default;
DistFn::DistFn(const DistFn&) = default;
DistFn::DistFn(DistFn&&) noexcept = default;
DistFn& DistFn::operator=(const DistFn&) = default;
DistFn& DistFn::operator=(DistFn&&) noexcept = default;

const Node& DistFn::node() const {
  if (!node_) throw DomainError("DistFn: empty handle");
  return *node_;
}

SupportClass DistFn::support_class() const { return node().cls; }
const std::vector<double>& DistFn::discontinuities() const { return node().discs; }
double DistFn::alpha() const { return node().alpha; }
double DistFn::omega() const { return node().omega; }

// --- point evaluation --------------------------------------------------------

namespace {

double eval_node(const Node& n, double x);
double survival_node(const Node& n, double x);
double log_eval_node(const Node& n, double x);

// Values computed from the child's log F(x); the only route that keeps
// chi_inv accurate once the child's value underflows.
double chi_inv_from_log(double l) {
  if (l == -kInf) return 0.0;
  return clamp01(1.0 / (1.0 - l));
}

double chi_inv_survival_from_log(double l) {
  if (l == -kInf) return 1.0;
  return clamp01(-l / (1.0 - l));
}

double eval_parametric(const dag::Parametric& p, double x) {
  switch (p.family) {
    case FamilyKind::Gumbel:
      return clamp01(std::exp(-std::exp(-x)));
    case FamilyKind::Frechet:
      return x > 0.0 ? clamp01(std::exp(-std::pow(x, -p.p1))) : 0.0;
    case FamilyKind::Weibull:
      return x > 0.0 ? 1.0 : clamp01(std::exp(-std::pow(-x, p.p1)));
    case FamilyKind::FreeExponential:
      return clamp01(-std::expm1(-x));
    case FamilyKind::Pareto:
      return x > 0.0 ? clamp01(1.0 - std::pow(x, -p.p1)) : 0.0;
    case FamilyKind::BetaLaw:
      return x > 0.0 ? 1.0 : clamp01(1.0 - std::pow(-x, p.p1));
    case FamilyKind::Dagum:
      return x > 0.0 ? clamp01(1.0 / (1.0 + p.p1 * std::pow(x, -p.p2))) : 0.0;
    case FamilyKind::CompoundPoissonClassical:
      return x >= 0.0
                 ? clamp01(std::exp(-p.p1 * survival_node(p.base->node(), x)))
                 : 0.0;
    case FamilyKind::CompoundPoissonFree:
      return x >= 0.0
                 ? clamp01(1.0 - p.p1 * survival_node(p.base->node(), x))
                 : 0.0;
  }
  return 0.0;
}

double survival_parametric(const dag::Parametric& p, double x) {
  switch (p.family) {
    case FamilyKind::Gumbel:
      return clamp01(-std::expm1(-std::exp(-x)));
    case FamilyKind::Frechet:
      return x > 0.0 ? clamp01(-std::expm1(-std::pow(x, -p.p1))) : 1.0;
    case FamilyKind::Weibull:
      return x > 0.0 ? 0.0 : clamp01(-std::expm1(-std::pow(-x, p.p1)));
    case FamilyKind::FreeExponential:
      return x > 0.0 ? clamp01(std::exp(-x)) : 1.0;
    case FamilyKind::Pareto:
      return x > 0.0 ? clamp01(std::pow(x, -p.p1)) : 1.0;
    case FamilyKind::BetaLaw:
      return x > 0.0 ? 0.0 : clamp01(std::pow(-x, p.p1));
    case FamilyKind::Dagum: {
      if (x <= 0.0) return 1.0;
      double w = p.p1 * std::pow(x, -p.p2);
      return clamp01(w / (1.0 + w));
    }
    case FamilyKind::CompoundPoissonClassical:
      return x >= 0.0
                 ? clamp01(-std::expm1(-p.p1 * survival_node(p.base->node(), x)))
                 : 1.0;
    case FamilyKind::CompoundPoissonFree:
      return x >= 0.0
                 ? clamp01(p.p1 * survival_node(p.base->node(), x))
                 : 1.0;
  }
  return 1.0;
}

// Index of the last sample point <= x, or -1.
std::ptrdiff_t empirical_index(const dag::Empirical& e, double x) {
  auto it = std::upper_bound(e.points.begin(), e.points.end(), x);
  return static_cast<std::ptrdiff_t>(it - e.points.begin()) - 1;
}

double map1_value(Map1 m, double t, double u) {
  switch (m) {
    case Map1::ClassicalPower: return detail::classical_power(u, t);
    case Map1::FreePower: return detail::free_power_unchecked(u, t);
    case Map1::BoolPower: return detail::bool_power(u, t);
    case Map1::LambdaVee: return detail::lambda_vee(u);
    case Map1::Chi: return detail::chi(u);
    case Map1::ChiInv: return detail::chi_inv(u);
    case Map1::B1Fused: return detail::b1_fused(u);
    case Map1::B1Inverse: return detail::b1_inverse(u);
  }
  return 0.0;
}

double map1_survival(Map1 m, double t, double s) {
  switch (m) {
    case Map1::ClassicalPower:
      if (s >= 1.0) return 1.0;
      return clamp01(-std::expm1(t * std::log1p(-s)));
    case Map1::FreePower:
      return std::min(t * s, 1.0);
    case Map1::BoolPower:
      return clamp01(t * s / (1.0 + (t - 1.0) * s));
    case Map1::LambdaVee:
      if (s >= 1.0) return 1.0;
      return std::min(-std::log1p(-s), 1.0);
    case Map1::Chi:
      if (s >= 1.0) return 1.0;
      return clamp01(-std::expm1(-s / (1.0 - s)));
    case Map1::ChiInv: {
      if (s >= 1.0) return 1.0;
      double v = -std::log1p(-s);
      return clamp01(v / (1.0 + v));
    }
    case Map1::B1Fused:
      // 1 - (2 - 1/u)_+ = min(s/(1-s), 1).
      if (s >= 1.0) return 1.0;
      return std::min(s / (1.0 - s), 1.0);
    case Map1::B1Inverse:
      return clamp01(s / (1.0 + s));
  }
  return 1.0;
}

double op2_value(Op2 op, double w, double u, double v) {
  switch (op) {
    case Op2::ClassicalMax: return detail::classical_max(u, v);
    case Op2::FreeMax: return detail::free_max(u, v);
    case Op2::BoolMax: return detail::bool_max(u, v);
    case Op2::Mix: return detail::mix(w, u, v);
  }
  return 0.0;
}

double op2_survival(Op2 op, double w, double sl, double sr) {
  switch (op) {
    case Op2::ClassicalMax:
      return clamp01(sl + sr - sl * sr);
    case Op2::FreeMax:
      return std::min(sl + sr, 1.0);
    case Op2::BoolMax: {
      if (sl >= 1.0 || sr >= 1.0) return 1.0;
      double p = sl * sr;
      return clamp01((sl + sr - 2.0 * p) / (1.0 - p));
    }
    case Op2::Mix:
      return clamp01((1.0 - w) * sl + w * sr);
  }
  return 1.0;
}

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::Parametric:
      return eval_parametric(*n.parametric, x);
    case NodeKind::Empirical: {
      auto i = empirical_index(*n.empirical, x);
      return i < 0 ? 0.0 : n.empirical->cum[static_cast<size_t>(i)];
    }
    case NodeKind::Dirac:
      return x >= n.dirac->location ? 1.0 : 0.0;
    case NodeKind::Affine:
      return eval_node(n.affine->child.node(), n.affine->a * x + n.affine->b);
    case NodeKind::Truncate:
      return x < n.truncate->cut ? 0.0 : eval_node(n.truncate->child.node(), x);
    case NodeKind::Pointwise1:
      if (n.pw1->map == Map1::ChiInv)
        return chi_inv_from_log(log_eval_node(n.pw1->child.node(), x));
      return map1_value(n.pw1->map, n.pw1->t, eval_node(n.pw1->child.node(), x));
    case NodeKind::Pointwise2:
      return op2_value(n.pw2->op, n.pw2->w, eval_node(n.pw2->left.node(), x),
                       eval_node(n.pw2->right.node(), x));
  }
  return 0.0;
}

double survival_node(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::Parametric:
      return survival_parametric(*n.parametric, x);
    case NodeKind::Empirical: {
      auto i = empirical_index(*n.empirical, x);
      return i < 0 ? 1.0 : n.empirical->surv[static_cast<size_t>(i)];
    }
    case NodeKind::Dirac:
      return x >= n.dirac->location ? 0.0 : 1.0;
    case NodeKind::Affine:
      return survival_node(n.affine->child.node(), n.affine->a * x + n.affine->b);
    case NodeKind::Truncate:
      return x < n.truncate->cut ? 1.0
                                 : survival_node(n.truncate->child.node(), x);
    case NodeKind::Pointwise1:
      if (n.pw1->map == Map1::ChiInv)
        return chi_inv_survival_from_log(log_eval_node(n.pw1->child.node(), x));
      return map1_survival(n.pw1->map, n.pw1->t,
                           survival_node(n.pw1->child.node(), x));
    case NodeKind::Pointwise2:
      return op2_survival(n.pw2->op, n.pw2->w,
                          survival_node(n.pw2->left.node(), x),
                          survival_node(n.pw2->right.node(), x));
  }
  return 1.0;
}


// --- log F(x) channel ---------------------------------------------------------
// Stable log-evaluation: the deep right tail of chi_inv compositions needs
// log F where F itself underflows (e.g. the Frechet value exp(-x^-a) dies at
// x^-a > 745 while its log, -x^-a, is plainly representable).

double log_hybrid(const Node& n, double x) {
  double s = survival_node(n, x);
  if (s < 0.5) return std::log1p(-s);
  double u = eval_node(n, x);
  return u > 0.0 ? std::log(u) : -kInf;
}

double log_parametric(const Node& n, double x) {
  const auto& p = *n.parametric;
  switch (p.family) {
    case FamilyKind::Gumbel: {
      double w = std::exp(-x);
      return std::isinf(w) ? -kInf : -w;
    }
    case FamilyKind::Frechet:
      return x > 0.0 ? -std::pow(x, -p.p1) : -kInf;
    case FamilyKind::Weibull:
      return x > 0.0 ? 0.0 : -std::pow(-x, p.p1);
    case FamilyKind::Dagum: {
      if (x <= 0.0) return -kInf;
      double w = p.p1 * std::pow(x, -p.p2);
      return std::isinf(w) ? -kInf : -std::log1p(w);
    }
    case FamilyKind::CompoundPoissonClassical:
      return x >= 0.0 ? -p.p1 * survival_node(p.base->node(), x) : -kInf;
    case FamilyKind::CompoundPoissonFree: {
      if (x < 0.0) return -kInf;
      double w = p.p1 * survival_node(p.base->node(), x);
      return w >= 1.0 ? -kInf : std::log1p(-w);
    }
    default:
      return log_hybrid(n, x);
  }
}

double log_map1(const Node& n, double x) {
  const auto& p = *n.pw1;
  const Node& c = p.child.node();
  switch (p.map) {
    case Map1::ClassicalPower:
      return p.t * log_eval_node(c, x);
    case Map1::FreePower: {
      // log (t u - (t-1))_+ = log1p(t (u - 1))
      double a = p.t * std::expm1(log_eval_node(c, x));
      return a <= -1.0 ? -kInf : std::log1p(a);
    }
    case Map1::BoolPower: {
      double l = log_eval_node(c, x);
      if (l == -kInf) return -kInf;
      return l - std::log(p.t - (p.t - 1.0) * std::exp(l));
    }
    case Map1::LambdaVee: {
      double l = log_eval_node(c, x);
      return l > -1.0 ? std::log1p(l) : -kInf;
    }
    case Map1::Chi: {
      // log chi(u) = 1 - 1/u = -expm1(-log u)
      double l = log_eval_node(c, x);
      double r = std::expm1(-l);
      return std::isinf(r) ? -kInf : -r;
    }
    case Map1::ChiInv: {
      double l = log_eval_node(c, x);
      return l == -kInf ? -kInf : -std::log1p(-l);
    }
    case Map1::B1Fused: {
      // log (2 - 1/u)_+ = log1p(-expm1(-log u)) where positive
      double l = log_eval_node(c, x);
      double r = std::expm1(-l);
      return r >= 1.0 ? -kInf : std::log1p(-r);
    }
    case Map1::B1Inverse: {
      // log (1 / (2 - u)) = -log1p(1 - u)
      double l = log_eval_node(c, x);
      return -std::log1p(-std::expm1(l));
    }
  }
  return -kInf;
}

double log_op2(const Node& n, double x) {
  const auto& p = *n.pw2;
  const Node& a = p.left.node();
  const Node& b = p.right.node();
  switch (p.op) {
    case Op2::ClassicalMax:
      return log_eval_node(a, x) + log_eval_node(b, x);
    case Op2::FreeMax: {
      double s = survival_node(a, x) + survival_node(b, x);
      return s >= 1.0 ? -kInf : std::log1p(-s);
    }
    case Op2::BoolMax: {
      double la = log_eval_node(a, x);
      double lb = log_eval_node(b, x);
      if (la == -kInf || lb == -kInf) return -kInf;
      double ss = survival_node(a, x) * survival_node(b, x);
      return la + lb - std::log1p(-ss);
    }
    case Op2::Mix: {
      double la = std::log1p(-p.w) + log_eval_node(a, x);
      double lb = std::log(p.w) + log_eval_node(b, x);
      double hi = std::max(la, lb), lo = std::min(la, lb);
      if (hi == -kInf) return -kInf;
      return hi + std::log1p(std::exp(lo - hi));
    }
  }
  return -kInf;
}

double log_eval_node(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::Parametric:
      return log_parametric(n, x);
    case NodeKind::Empirical:
      return log_hybrid(n, x);
    case NodeKind::Dirac:
      return x >= n.dirac->location ? 0.0 : -kInf;
    case NodeKind::Affine:
      return log_eval_node(n.affine->child.node(), n.affine->a * x + n.affine->b);
    case NodeKind::Truncate:
      return x < n.truncate->cut ? -kInf
                                 : log_eval_node(n.truncate->child.node(), x);
    case NodeKind::Pointwise1:
      return log_map1(n, x);
    case NodeKind::Pointwise2:
      return log_op2(n, x);
  }
  return -kInf;
}

void eval_node_batch(const Node& n, const double* xs, double* out, size_t m) {
  switch (n.kind) {
    case NodeKind::Parametric: {
      for (size_t i = 0; i < m; ++i) out[i] = eval_parametric(*n.parametric, xs[i]);
      return;
    }
    case NodeKind::Empirical: {
      for (size_t i = 0; i < m; ++i) {
        auto k = empirical_index(*n.empirical, xs[i]);
        out[i] = k < 0 ? 0.0 : n.empirical->cum[static_cast<size_t>(k)];
      }
      return;
    }
    case NodeKind::Dirac: {
      for (size_t i = 0; i < m; ++i) out[i] = xs[i] >= n.dirac->location ? 1.0 : 0.0;
      return;
    }
    case NodeKind::Affine: {
      std::vector<double> tx(m);
      for (size_t i = 0; i < m; ++i) tx[i] = n.affine->a * xs[i] + n.affine->b;
      eval_node_batch(n.affine->child.node(), tx.data(), out, m);
      return;
    }
    case NodeKind::Truncate: {
      eval_node_batch(n.truncate->child.node(), xs, out, m);
      for (size_t i = 0; i < m; ++i)
        if (xs[i] < n.truncate->cut) out[i] = 0.0;
      return;
    }
    case NodeKind::Pointwise1: {
      if (n.pw1->map == Map1::ChiInv) {
        const Node& c = n.pw1->child.node();
        for (size_t i = 0; i < m; ++i)
          out[i] = chi_inv_from_log(log_eval_node(c, xs[i]));
        return;
      }
      eval_node_batch(n.pw1->child.node(), xs, out, m);
      switch (n.pw1->map) {
        case Map1::ClassicalPower: kernels::classical_power(n.pw1->t, out, out, m); return;
        case Map1::FreePower: kernels::free_power(n.pw1->t, out, out, m); return;
        case Map1::BoolPower: kernels::bool_power(n.pw1->t, out, out, m); return;
        case Map1::LambdaVee: kernels::lambda_vee(out, out, m); return;
        case Map1::Chi: kernels::chi(out, out, m); return;
        case Map1::ChiInv: kernels::chi_inv(out, out, m); return;
        case Map1::B1Fused: kernels::b1_fused(out, out, m); return;
        case Map1::B1Inverse: kernels::b1_inverse(out, out, m); return;
      }
      return;
    }
    case NodeKind::Pointwise2: {
      eval_node_batch(n.pw2->left.node(), xs, out, m);
      std::vector<double> rhs(m);
      eval_node_batch(n.pw2->right.node(), xs, rhs.data(), m);
      switch (n.pw2->op) {
        case Op2::ClassicalMax: kernels::classical_max(out, rhs.data(), out, m); return;
        case Op2::FreeMax: kernels::free_max(out, rhs.data(), out, m); return;
        case Op2::BoolMax: kernels::bool_max(out, rhs.data(), out, m); return;
        case Op2::Mix: kernels::mix(n.pw2->w, out, rhs.data(), out, m); return;
      }
      return;
    }
  }
}

}  // namespace

double DistFn::eval(double x) const { return eval_node(node(), x); }

double DistFn::survival(double x) const { return survival_node(node(), x); }

double DistFn::log_eval(double x) const { return log_eval_node(node(), x); }

void DistFn::eval_batch(std::span<const double> xs, std::span<double> out) const {
  if (out.size() < xs.size())
    throw DomainError("eval_batch: output span too small");
  eval_node_batch(node(), xs.data(), out.data(), xs.size());
}

std::vector<double> DistFn::eval_on(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  eval_batch(xs, out);
  return out;
}

// --- crossing search ----------------------------------------------------------

double crossing_sup_leq(const std::function<double(double)>& h, double c) {
  double lo = -1.0, hi = 1.0;
  while (h(lo) > c) {
    if (lo <= -kBracketCap) return -kInf;
    lo = std::max(lo * 2.0, -kBracketCap);
    if (lo == -kBracketCap && h(lo) > c) return -kInf;
  }
  while (h(hi) <= c) {
    if (hi >= kBracketCap) return kInf;
    hi = std::min(hi * 2.0, kBracketCap);
    if (hi == kBracketCap && h(hi) <= c) return kInf;
  }
  for (int it = 0; it < kBisectMaxIter && hi - lo > kBisectTolX; ++it) {
    double mid = 0.5 * (lo + hi);
    if (h(mid) <= c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// --- node builders -------------------------------------------------------------

namespace {

DistFn finish(Node n) {
  return DistFn(std::make_shared<const Node>(std::move(n)));
}

double node_alpha_crossing(const DistFn& f, double level) {
  return crossing_sup_leq([&f](double x) { return f.eval(x); }, level);
}

}  // namespace

DistFn dirac(double location) {
  Node n;
  n.kind = NodeKind::Dirac;
  n.dirac = dag::Dirac{location};
  n.cls = location > 0.0 ? SupportClass::Positive
          : location >= 0.0 ? SupportClass::NonNegative
                            : SupportClass::Whole;
  n.discs = {location};
  n.alpha = location;
  n.omega = location;
  return finish(std::move(n));
}

DistFn empirical(std::vector<double> xs, std::vector<double> weights) {
  if (xs.empty()) throw ParameterError("empirical: no sample points");
  if (!weights.empty() && weights.size() != xs.size())
    throw ParameterError("empirical: weight count differs from point count");
  std::vector<std::pair<double, double>> rows(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    double w = weights.empty() ? 1.0 : weights[i];
    if (!(w >= 0.0)) throw ParameterError("empirical: negative weight");
    if (!std::isfinite(xs[i])) throw ParameterError("empirical: non-finite point");
    rows[i] = {xs[i], w};
  }
  std::sort(rows.begin(), rows.end());
  dag::Empirical e;
  for (const auto& [x, w] : rows) {
    if (!e.points.empty() && e.points.back() == x)
      e.cum.back() += w;  // merge ties
    else {
      e.points.push_back(x);
      e.cum.push_back(w);
    }
  }
  double total = 0.0;
  for (double w : e.cum) total += w;
  if (!(total > 0.0)) throw ParameterError("empirical: zero total weight");
  // Exact complementary tail first, then the cumulative prefix.
  e.surv.assign(e.points.size(), 0.0);
  double tail = 0.0;
  for (size_t i = e.points.size(); i-- > 0;) {
    e.surv[i] = tail / total;
    tail += e.cum[i];
  }
  double acc = 0.0;
  for (size_t i = 0; i < e.cum.size(); ++i) {
    acc += e.cum[i];
    e.cum[i] = std::min(acc / total, 1.0);
  }
  e.cum.back() = 1.0;

  Node n;
  n.kind = NodeKind::Empirical;
  n.cls = e.points.front() > 0.0 ? SupportClass::Positive
          : e.points.front() >= 0.0 ? SupportClass::NonNegative
                                    : SupportClass::Whole;
  n.discs = e.points;
  n.alpha = e.points.front();
  n.omega = e.points.back();
  n.empirical = std::move(e);
  return finish(std::move(n));
}

DistFn empirical_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> xs, ws;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // tolerate commas as separators
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ss(line);
    double x, w;
    if (!(ss >> x)) {
      if (first) {  // header line
        first = false;
        continue;
      }
      if (line.find_first_not_of(" \r\n") == std::string::npos) continue;
      throw IoError("malformed row in " + path + ": " + line);
    }
    first = false;
    xs.push_back(x);
    ws.push_back(ss >> w ? w : 1.0);
  }
  if (xs.empty()) throw IoError("no data rows in " + path);
  return empirical(std::move(xs), std::move(ws));
}

DistFn affine_rescale(const DistFn& child, double a, double b) {
  if (!(a > 0.0)) throw DomainError("affine_rescale: scale a must be > 0");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("affine_rescale: non-finite coefficients");
  const Node& c = child.node();
  Node n;
  n.kind = NodeKind::Affine;
  n.affine = dag::Affine{child, a, b};
  n.cls = (b <= 0.0) ? c.cls : SupportClass::Whole;
  n.discs.reserve(c.discs.size());
  for (double d : c.discs) n.discs.push_back((d - b) / a);
  std::sort(n.discs.begin(), n.discs.end());
  n.alpha = std::isfinite(c.alpha) ? (c.alpha - b) / a : c.alpha;
  n.omega = std::isfinite(c.omega) ? (c.omega - b) / a : c.omega;
  return finish(std::move(n));
}

DistFn truncate_below(const DistFn& child, double cut) {
  if (!std::isfinite(cut)) throw DomainError("truncate_below: non-finite cut");
  const Node& c = child.node();
  Node n;
  n.kind = NodeKind::Truncate;
  n.truncate = dag::Truncate{child, cut};
  if (cut > 0.0)
    n.cls = SupportClass::Positive;
  else if (cut == 0.0)
    n.cls = child.eval(0.0) == 0.0 ? SupportClass::Positive : SupportClass::NonNegative;
  else
    n.cls = c.cls;  // a negative cut cannot improve the class
  n.discs = with_point(c.discs, cut);
  n.alpha = std::max(c.alpha, cut);
  n.omega = std::max(c.omega, cut);
  return finish(std::move(n));
}

namespace {

DistFn make_pointwise1(Map1 m, double t, const DistFn& child) {
  const Node& c = child.node();
  Node n;
  n.kind = NodeKind::Pointwise1;
  n.pw1 = dag::Pointwise1{m, t, child};
  n.discs = c.discs;
  n.omega = c.omega;
  switch (m) {
    case Map1::ClassicalPower:
    case Map1::BoolPower:
    case Map1::Chi:
    case Map1::ChiInv:
      n.cls = c.cls;
      n.alpha = c.alpha;
      break;
    case Map1::FreePower:
      if (t >= 1.0) {
        n.cls = c.cls;
        if (t > 1.0) {
          // alpha moves to the crossing F <= 1 - 1/t; a jump can appear there.
          n.alpha = node_alpha_crossing(child, 1.0 - 1.0 / t);
          if (std::isfinite(n.alpha)) n.discs = with_point(n.discs, n.alpha);
        } else {
          n.alpha = c.alpha;
        }
      } else {
        // Defective piece (positive at -inf); valid only under a truncation.
        n.cls = SupportClass::Whole;
        n.alpha = -kInf;
      }
      break;
    case Map1::LambdaVee:
      n.cls = c.cls;
      n.alpha = node_alpha_crossing(child, std::exp(-1.0));
      break;
    case Map1::B1Fused:
      n.cls = c.cls;
      n.alpha = node_alpha_crossing(child, 0.5);
      break;
    case Map1::B1Inverse:
      n.cls = SupportClass::Whole;
      n.alpha = -kInf;
      break;
  }
  return finish(std::move(n));
}

DistFn make_pointwise2(Op2 op, double w, const DistFn& l, const DistFn& r) {
  const Node& a = l.node();
  const Node& b = r.node();
  Node n;
  n.kind = NodeKind::Pointwise2;
  n.pw2 = dag::Pointwise2{op, w, l, r};
  n.discs = merge_sorted(a.discs, b.discs);
  n.omega = std::max(a.omega, b.omega);
  switch (op) {
    case Op2::ClassicalMax:
    case Op2::BoolMax:
      n.cls = meet_restrictive(a.cls, b.cls);
      n.alpha = std::max(a.alpha, b.alpha);
      break;
    case Op2::FreeMax: {
      n.cls = meet_restrictive(a.cls, b.cls);
      n.alpha = crossing_sup_leq(
          [&l, &r](double x) { return l.eval(x) + r.eval(x); }, 1.0);
      if (std::isfinite(n.alpha)) n.discs = with_point(n.discs, n.alpha);
      break;
    }
    case Op2::Mix:
      n.cls = weakest(a.cls, b.cls);
      n.alpha = std::min(a.alpha, b.alpha);
      break;
  }
  return finish(std::move(n));
}

void require_nonnegative_class(const DistFn& f, const char* what) {
  if (f.support_class() == SupportClass::Whole)
    throw ClassError(std::string(what) +
                     ": operand must be supported on [0,inf)");
}

}  // namespace

DistFn combine(Conv op, const DistFn& f, const DistFn& g) {
  switch (op) {
    case Conv::Classical:
      return make_pointwise2(Op2::ClassicalMax, 0.0, f, g);
    case Conv::Free:
      return make_pointwise2(Op2::FreeMax, 0.0, f, g);
    case Conv::Bool:
      require_nonnegative_class(f, "bool max-convolution");
      require_nonnegative_class(g, "bool max-convolution");
      return make_pointwise2(Op2::BoolMax, 0.0, f, g);
  }
  throw DomainError("combine: bad op");
}

DistFn power(Conv op, const DistFn& f, double t) {
  switch (op) {
    case Conv::Classical:
      if (!(t > 0.0))
        throw DomainError("classical power: exponent must be > 0");
      return make_pointwise1(Map1::ClassicalPower, t, f);
    case Conv::Free:
      if (!(t >= 1.0))
        throw DomainError("free power: exponent must be >= 1");
      return make_pointwise1(Map1::FreePower, t, f);
    case Conv::Bool:
      require_nonnegative_class(f, "bool power");
      if (!(t >= 0.0)) throw DomainError("bool power: exponent must be >= 0");
      if (t == 0.0) return dirac(f.alpha());  // unit step at alpha(F)
      return make_pointwise1(Map1::BoolPower, t, f);
  }
  throw DomainError("power: bad op");
}

DistFn map_fn(MapKind m, const DistFn& f) {
  switch (m) {
    case MapKind::LambdaVee:
      return make_pointwise1(Map1::LambdaVee, 0.0, f);
    case MapKind::Chi:
      require_nonnegative_class(f, "chi");
      return make_pointwise1(Map1::Chi, 0.0, f);
    case MapKind::ChiInv:
      require_nonnegative_class(f, "chi_inv");
      return make_pointwise1(Map1::ChiInv, 0.0, f);
  }
  throw DomainError("map_fn: bad map");
}

DistFn mixture(double w, const DistFn& f, const DistFn& g) {
  if (!(w >= 0.0 && w <= 1.0))
    throw DomainError("mixture: weight must lie in [0,1]");
  return make_pointwise2(Op2::Mix, w, f, g);
}

DistFn free_power_total(const DistFn& f, double t) {
  if (!(t > 0.0)) throw DomainError("free_power_total: exponent must be > 0");
  return make_pointwise1(Map1::FreePower, t, f);
}

DistFn b1_inverse_map(const DistFn& f) {
  return make_pointwise1(Map1::B1Inverse, 0.0, f);
}

DistFn b1_fused_map(const DistFn& f) {
  return make_pointwise1(Map1::B1Fused, 0.0, f);
}

DistFn free_nth_root(const DistFn& f, long n) {
  if (n < 1) throw DomainError("free_nth_root: n must be >= 1");
  if (n == 1) return f;
  double a = f.alpha();
  if (!(a > -kInf))
    throw DomainError(
        "free_nth_root: no free root exists when alpha(F) = -inf");
  return truncate_below(free_power_total(f, 1.0 / static_cast<double>(n)), a);
}

DistFn bool_nth_root(const DistFn& f, long n) {
  if (n < 1) throw DomainError("bool_nth_root: n must be >= 1");
  require_nonnegative_class(f, "bool_nth_root");
  if (n == 1) return f;
  return power(Conv::Bool, f, 1.0 / static_cast<double>(n));
}

bool is_freely_max_id(const DistFn& f) { return f.alpha() > -kInf; }

bool is_free_regular_max_id(const DistFn& f) {
  if (f.support_class() != SupportClass::Positive)
    throw ClassError(
        "is_free_regular_max_id: operand must be in the positive class");
  return f.alpha() > 0.0;
}

// --- grids ----------------------------------------------------------------------

EvalGrid linear_grid(double lo, double hi, int n, double exclusion_radius) {
  if (!(lo < hi)) throw DomainError("grid: lo must be < hi");
  if (n < 2) throw DomainError("grid: need at least 2 points");
  EvalGrid g;
  g.exclusion_radius = exclusion_radius;
  g.points.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    g.points.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  g.points.back() = hi;
  return g;
}

EvalGrid log_grid(double lo, double hi, int n, double exclusion_radius) {
  if (!(lo > 0.0)) throw DomainError("log grid: lo must be > 0");
  if (!(lo < hi)) throw DomainError("grid: lo must be < hi");
  if (n < 2) throw DomainError("grid: need at least 2 points");
  EvalGrid g;
  g.exclusion_radius = exclusion_radius;
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g.points.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                          static_cast<double>(n - 1)));
  g.points.front() = lo;
  g.points.back() = hi;
  return g;
}

EvalGrid default_grid(const DistFn& f, int n) {
  double lo = std::isfinite(f.alpha()) ? f.alpha() - 1.0 : -1e3;
  double hi = std::isfinite(f.omega()) ? f.omega() + 1.0 : 1e3;
  lo = std::max(lo, -1e3);
  hi = std::min(hi, 1e3);
  if (!(lo < hi)) {  // degenerate support; spread a window around it
    lo -= 1.0;
    hi += 1.0;
  }
  int n_lin = n / 2 + 1;
  EvalGrid g = linear_grid(lo, hi, n_lin);
  if (hi > 0.0) {
    double log_lo = lo > 0.0 ? lo : std::min(1e-3, hi / 2.0);
    if (log_lo < hi) {
      EvalGrid lg = log_grid(log_lo, hi, n - n_lin + 1);
      g.points = merge_sorted(g.points, lg.points);
    }
  }
  return g;
}

// --- metrics ---------------------------------------------------------------------

namespace {

bool near_any(const std::vector<double>& sorted, double x, double radius) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x - radius);
  return it != sorted.end() && *it <= x + radius;
}

}  // namespace

double sup_distance(const DistFn& f, const DistFn& g, const EvalGrid& grid) {
  std::vector<double> xs;
  xs.reserve(grid.points.size());
  const auto& jumps = g.discontinuities();
  for (double x : grid.points)
    if (!near_any(jumps, x, grid.exclusion_radius)) xs.push_back(x);
  if (xs.empty())
    throw EmptyGridError("sup_distance: exclusions removed every grid point");
  std::vector<double> fv(xs.size()), gv(xs.size());
  f.eval_batch(xs, fv);
  g.eval_batch(xs, gv);
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i)
    d = std::max(d, std::abs(fv[i] - gv[i]));
  return d;
}

double levy_distance(const DistFn& f, const DistFn& g, double resolution) {
  if (!(resolution > 0.0))
    throw DomainError("levy_distance: resolution must be > 0");
  auto span_lo = [](const DistFn& h) {
    return std::max(std::isfinite(h.alpha()) ? h.alpha() - 1.0 : -1e3, -1e3);
  };
  auto span_hi = [](const DistFn& h) {
    return std::min(std::isfinite(h.omega()) ? h.omega() + 1.0 : 1e3, 1e3);
  };
  double lo = std::min(span_lo(f), span_lo(g));
  double hi = std::max(span_hi(f), span_hi(g));
  if (!(lo < hi)) { lo -= 1.0; hi += 1.0; }
  EvalGrid grid = linear_grid(lo, hi, 2001);
  std::vector<double> gv(grid.points.size());
  g.eval_batch(grid.points, gv);

  auto admissible = [&](double eps) {
    for (size_t i = 0; i < grid.points.size(); ++i) {
      double x = grid.points[i];
      if (f.eval(x - eps) - eps > gv[i]) return false;
      if (gv[i] > f.eval(x + eps) + eps) return false;
    }
    return true;
  };
  // eps = 1 is always admissible; binary-search the lattice below it.
  long kmax = static_cast<long>(std::ceil(1.0 / resolution));
  long lo_k = 0, hi_k = kmax;
  if (admissible(0.0)) return 0.0;
  while (hi_k - lo_k > 1) {
    long mid = lo_k + (hi_k - lo_k) / 2;
    if (admissible(static_cast<double>(mid) * resolution))
      hi_k = mid;
    else
      lo_k = mid;
  }
  return static_cast<double>(hi_k) * resolution;
}

std::vector<std::string> validate(const DistFn& f) {
  std::vector<std::string> issues;
  EvalGrid grid = default_grid(f);
  std::vector<double> v(grid.points.size());
  f.eval_batch(grid.points, v);
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] > v[i + 1] + 1e-12) {
      issues.push_back("not nondecreasing near x = " + fmt(grid.points[i]));
      break;
    }
  }
  for (double x : grid.points) {
    double u = f.eval(x);
    if (!(u >= 0.0 && u <= 1.0)) {
      issues.push_back("value outside [0,1] at x = " + fmt(x));
      break;
    }
  }
  if (f.eval(-kBracketCap) > 1e-9) issues.push_back("limit at -inf is not 0");
  if (f.eval(kBracketCap) < 1.0 - 1e-6) issues.push_back("limit at +inf is not 1");
  for (double d : f.discontinuities()) {
    if (!std::isfinite(d)) continue;
    if (std::abs(f.eval(d) - f.eval(d + 1e-9)) > 1e-6) {
      issues.push_back("not right-continuous at x = " + fmt(d));
      break;
    }
  }
  if (f.support_class() != SupportClass::Whole && f.eval(-0.5) != 0.0)
    issues.push_back("class tag claims support in [0,inf) but F(-0.5) > 0");
  if (f.support_class() == SupportClass::Positive && f.eval(0.0) != 0.0)
    issues.push_back("class tag claims F(0) = 0 but F(0) > 0");
  return issues;
}

// --- description -------------------------------------------------------------------

namespace {

std::string describe_node(const Node& n);

std::string describe_family(const dag::Parametric& p) {
  switch (p.family) {
    case FamilyKind::Gumbel: return "gumbel()";
    case FamilyKind::Frechet: return "frechet(" + fmt(p.p1) + ")";
    case FamilyKind::Weibull: return "weibull(" + fmt(p.p1) + ")";
    case FamilyKind::FreeExponential: return "freeexp()";
    case FamilyKind::Pareto: return "pareto(" + fmt(p.p1) + ")";
    case FamilyKind::BetaLaw: return "betalaw(" + fmt(p.p1) + ")";
    case FamilyKind::Dagum:
      return "dagum(" + fmt(p.p1) + ", " + fmt(p.p2) + ")";
    case FamilyKind::CompoundPoissonClassical:
      return "cpc(" + fmt(p.p1) + ", " + describe_node(p.base->node()) + ")";
    case FamilyKind::CompoundPoissonFree:
      return "cpf(" + fmt(p.p1) + ", " + describe_node(p.base->node()) + ")";
  }
  return "?";
}

std::string describe_node(const Node& n) {
  switch (n.kind) {
    case NodeKind::Parametric:
      return describe_family(*n.parametric);
    case NodeKind::Empirical:
      return "empirical(" + std::to_string(n.empirical->points.size()) +
             " points)";
    case NodeKind::Dirac:
      return "dirac(" + fmt(n.dirac->location) + ")";
    case NodeKind::Affine:
      return "scale(" + describe_node(n.affine->child.node()) + ", " +
             fmt(n.affine->a) + ", " + fmt(n.affine->b) + ")";
    case NodeKind::Truncate:
      return "truncate(" + describe_node(n.truncate->child.node()) + ", " +
             fmt(n.truncate->cut) + ")";
    case NodeKind::Pointwise1: {
      const auto& p = *n.pw1;
      std::string c = describe_node(p.child.node());
      switch (p.map) {
        case Map1::ClassicalPower: return "powc(" + c + ", " + fmt(p.t) + ")";
        case Map1::FreePower: return "powf(" + c + ", " + fmt(p.t) + ")";
        case Map1::BoolPower: return "powb(" + c + ", " + fmt(p.t) + ")";
        case Map1::LambdaVee: return "lambda(" + c + ")";
        case Map1::Chi: return "chi(" + c + ")";
        case Map1::ChiInv: return "chiinv(" + c + ")";
        case Map1::B1Fused: return "b1(" + c + ")";
        case Map1::B1Inverse: return "b1inv(" + c + ")";
      }
      return "?";
    }
    case NodeKind::Pointwise2: {
      const auto& p = *n.pw2;
      std::string l = describe_node(p.left.node());
      std::string r = describe_node(p.right.node());
      switch (p.op) {
        case Op2::ClassicalMax: return "maxc(" + l + ", " + r + ")";
        case Op2::FreeMax: return "maxf(" + l + ", " + r + ")";
        case Op2::BoolMax: return "maxb(" + l + ", " + r + ")";
        case Op2::Mix: return "mix(" + fmt(p.w) + ", " + l + ", " + r + ")";
      }
      return "?";
    }
  }
  return "?";
}

}  // namespace

std::string DistFn::describe() const { return describe_node(node()); }

}  // namespace maxalg
