#pragma once

// Distribution functions as immutable expression DAGs. Every operation in
// the max-convolution algebra is pointwise in F(x), so a node only needs to
// know how to turn child values into its own value; evaluation over a grid
// runs batch kernels node by node. Each node carries a support-class tag,
// its known jump locations, and the support endpoints alpha/omega.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxalg/errors.hpp"

namespace maxalg {

// Support classes, ordered by restriction:
//   Whole          any distribution function on R                 (Delta)
//   NonNegative    F(x) = 0 for x < 0                             (Delta_+)
//   Positive       additionally F(0) = 0                          (Delta_+^0)
enum class SupportClass { Whole = 0, NonNegative = 1, Positive = 2 };

const char* support_class_name(SupportClass c);

enum class FamilyKind {
  Gumbel,
  Frechet,
  Weibull,
  FreeExponential,
  Pareto,
  BetaLaw,
  Dagum,
  CompoundPoissonClassical,
  CompoundPoissonFree,
};

// Pointwise unary maps a node can apply to its child's value.
enum class Map1 {
  ClassicalPower,  // u^t, t > 0
  FreePower,       // (t u - (t-1))_+, total formula
  BoolPower,       // u / (t - (t-1) u), t > 0
  LambdaVee,       // (1 + log u)_+, 0 -> 0
  Chi,             // exp(1 - 1/u), 0 -> 0
  ChiInv,          // 1 / (1 - log u), 0 -> 0
  B1Fused,         // (2 - 1/u)_+, 0 -> 0
  B1Inverse,       // 1 / (2 - u)
};

// Pointwise binary combinators.
enum class Op2 {
  ClassicalMax,  // u v
  FreeMax,       // (u + v - 1)_+
  BoolMax,       // u v / (u + v - u v), 0 if either is 0
  Mix,           // (1-w) u + w v  (convex mixture)
};

// Convolution selector for the public combine/power surface.
enum class Conv { Classical, Free, Bool };

const char* conv_name(Conv c);

struct Node;

class DistFn {
 public:
  DistFn();
  explicit DistFn(std::shared_ptr<const Node> node);
  ~DistFn();
  DistFn(const DistFn&);
  DistFn(DistFn&&) noexcept;
  DistFn& operator=(const DistFn&);
  DistFn& operator=(DistFn&&) noexcept;

  bool valid() const { return node_ != nullptr; }

  // F(x), in [0,1].
  double eval(double x) const;
  void eval_batch(std::span<const double> xs, std::span<double> out) const;
  std::vector<double> eval_on(std::span<const double> xs) const;

  // 1 - F(x), computed through complementary closed forms so heavy tails
  // survive down to the underflow threshold instead of dying at 1 - 1.
  double survival(double x) const;

  // log F(x) through stable per-node forms; -inf where F vanishes. Feeds the
  // chi_inv map, whose output keeps more resolution than the value channel.
  double log_eval(double x) const;

  SupportClass support_class() const;
  const std::vector<double>& discontinuities() const;

  // Support endpoints: alpha = sup{x : F(x) = 0}, omega = inf{x : F(x) = 1};
  // -inf / +inf are legal values.
  double alpha() const;
  double omega() const;

  std::string describe() const;
  const Node& node() const;
  std::shared_ptr<const Node> node_ptr() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

namespace dag {

struct Parametric {
  FamilyKind family;
  double p1 = 0.0;  // alpha, or lambda for Dagum / compound Poisson
  double p2 = 0.0;  // alpha for Dagum
  std::optional<DistFn> base;  // G for the compound Poisson laws
};

struct Empirical {
  std::vector<double> points;   // sorted, unique
  std::vector<double> cum;      // cumulative probabilities, cum.back() == 1
  std::vector<double> surv;     // exact complementary tail per point
};

struct Dirac {
  double location;
};

struct Affine {  // x -> child(a x + b), a > 0
  DistFn child;
  double a;
  double b;
};

struct Truncate {  // 0 for x < cut, child(x) for x >= cut
  DistFn child;
  double cut;
};

struct Pointwise1 {
  Map1 map;
  double t = 0.0;  // exponent where the map takes one
  DistFn child;
};

struct Pointwise2 {
  Op2 op;
  double w = 0.0;  // mixture weight for Op2::Mix
  DistFn left;
  DistFn right;
};

}  // namespace dag

enum class NodeKind { Parametric, Empirical, Dirac, Affine, Truncate, Pointwise1, Pointwise2 };

struct Node {
  NodeKind kind;
  SupportClass cls = SupportClass::Whole;
  std::vector<double> discs;  // sorted jump locations
  double alpha = -std::numeric_limits<double>::infinity();
  double omega = std::numeric_limits<double>::infinity();

  // Exactly the member matching `kind` is engaged.
  std::optional<dag::Parametric> parametric;
  std::optional<dag::Empirical> empirical;
  std::optional<dag::Dirac> dirac;
  std::optional<dag::Affine> affine;
  std::optional<dag::Truncate> truncate;
  std::optional<dag::Pointwise1> pw1;
  std::optional<dag::Pointwise2> pw2;
};

// --- leaf constructors ------------------------------------------------------

DistFn dirac(double location);

// Right-continuous step function from samples with optional weights;
// ties merge, weights normalize. Throws ParameterError on empty input or
// negative weights.
DistFn empirical(std::vector<double> xs, std::vector<double> weights = {});

// Loads (x[,weight]) rows; '#' comments and a non-numeric header line are
// skipped. Throws IoError if the file cannot be read.
DistFn empirical_from_csv(const std::string& path);

// --- structural constructors ------------------------------------------------

// x -> child(a x + b) with a > 0.
DistFn affine_rescale(const DistFn& child, double a, double b);

DistFn truncate_below(const DistFn& child, double cut);

// Pointwise max-convolution; Bool requires both operands in Delta_+.
DistFn combine(Conv op, const DistFn& f, const DistFn& g);

// Convolution powers. Classical: t > 0. Free: t >= 1. Bool: t >= 0 and
// operand in Delta_+, with t = 0 yielding the unit step at alpha(F).
DistFn power(Conv op, const DistFn& f, double t);

enum class MapKind { LambdaVee, Chi, ChiInv };

// Pointwise homomorphism maps; Chi/ChiInv require Delta_+.
DistFn map_fn(MapKind m, const DistFn& f);

// Convex mixture (1-w) f + w g for w in [0,1].
DistFn mixture(double w, const DistFn& f, const DistFn& g);

// Total-formula free power node without the t >= 1 gate. The pieces of the
// convolution-root constructions need t in (0,1); they are only valid under
// a truncation, so this never appears on the public operation surface.
DistFn free_power_total(const DistFn& f, double t);

// u -> 1/(2 - u) lifted pointwise; the limit shape of Boolean powers whose
// free powers converge. Defective below the support, so callers truncate.
DistFn b1_inverse_map(const DistFn& f);

// u -> (2 - 1/u)_+ lifted pointwise: the fused time-one form of bn.
DistFn b1_fused_map(const DistFn& f);

// --- convolution roots --------------------------------------------------------

// G with power(Free, G, n) = F pointwise; requires alpha(F) > -inf.
DistFn free_nth_root(const DistFn& f, long n);

// G with power(Bool, G, n) = F pointwise; requires F in Delta_+.
DistFn bool_nth_root(const DistFn& f, long n);

// --- predicates ---------------------------------------------------------------

bool is_freely_max_id(const DistFn& f);

// Requires F in Delta_+^0.
bool is_free_regular_max_id(const DistFn& f);

// --- grids and metrics ----------------------------------------------------------

struct EvalGrid {
  std::vector<double> points;       // strictly increasing
  double exclusion_radius = 1e-6;  // neighborhoods of jumps to skip
};

EvalGrid linear_grid(double lo, double hi, int n, double exclusion_radius = 1e-6);
EvalGrid log_grid(double lo, double hi, int n, double exclusion_radius = 1e-6);

// 2001 mixed linear/log points covering [alpha-1, omega+1] clipped to
// [-1e3, 1e3].
EvalGrid default_grid(const DistFn& f, int n = 2001);

// max |F - G| over grid points at least exclusion_radius away from G's
// declared discontinuities. Throws EmptyGridError if nothing remains.
double sup_distance(const DistFn& f, const DistFn& g, const EvalGrid& grid);

// Smallest eps on the lattice {k * resolution} with
// F(x - eps) - eps <= G(x) <= F(x + eps) + eps over a probe grid; upper
// bounds the true Levy metric by one resolution step.
double levy_distance(const DistFn& f, const DistFn& g, double resolution);

// Checks monotonicity, limits, right-continuity at declared jumps, and
// class-tag soundness on a probe grid; returns human-readable issues.
std::vector<std::string> validate(const DistFn& f);

// sup{x : h(x) <= c} for nondecreasing h, by bracket doubling from [-1,1]
// capped at +-1e9 and bisection to 1e-10; returns -inf/+inf if the bracket
// never resolves.
double crossing_sup_leq(const std::function<double(double)>& h, double c);

}  // namespace maxalg
