#include "maxalg/json_io.hpp"

#include <cmath>

#include "maxalg/families.hpp"

namespace maxalg::json_io {

namespace {

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Gumbel: return "gumbel";
    case FamilyKind::Frechet: return "frechet";
    case FamilyKind::Weibull: return "weibull";
    case FamilyKind::FreeExponential: return "freeexp";
    case FamilyKind::Pareto: return "pareto";
    case FamilyKind::BetaLaw: return "betalaw";
    case FamilyKind::Dagum: return "dagum";
    case FamilyKind::CompoundPoissonClassical: return "cpc";
    case FamilyKind::CompoundPoissonFree: return "cpf";
  }
  return "?";
}

const char* map_name(Map1 m) {
  switch (m) {
    case Map1::ClassicalPower: return "classical_pow";
    case Map1::FreePower: return "free_pow";
    case Map1::BoolPower: return "bool_pow";
    case Map1::LambdaVee: return "lambda_vee";
    case Map1::Chi: return "chi";
    case Map1::ChiInv: return "chi_inv";
    case Map1::B1Fused: return "b1";
    case Map1::B1Inverse: return "b1_inv";
  }
  return "?";
}

const char* op_name(Op2 op) {
  switch (op) {
    case Op2::ClassicalMax: return "classical_max";
    case Op2::FreeMax: return "free_max";
    case Op2::BoolMax: return "bool_max";
    case Op2::Mix: return "mix";
  }
  return "?";
}

// Encode infinities as strings so the document stays valid JSON.
json num_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  if (std::isnan(v)) return json();
  return json(v);
}

json verdict_json(limit_lab::Verdict v) {
  return json(limit_lab::verdict_name(v));
}

}  // namespace

json to_json(const DistFn& f) {
  const Node& n = f.node();
  json j;
  switch (n.kind) {
    case NodeKind::Parametric: {
      const auto& p = *n.parametric;
      j["node"] = "parametric";
      j["family"] = family_name(p.family);
      switch (p.family) {
        case FamilyKind::Gumbel:
        case FamilyKind::FreeExponential:
          break;
        case FamilyKind::Frechet:
        case FamilyKind::Weibull:
        case FamilyKind::Pareto:
        case FamilyKind::BetaLaw:
          j["alpha"] = p.p1;
          break;
        case FamilyKind::Dagum:
          j["lambda"] = p.p1;
          j["alpha"] = p.p2;
          break;
        case FamilyKind::CompoundPoissonClassical:
        case FamilyKind::CompoundPoissonFree:
          j["lambda"] = p.p1;
          j["base"] = to_json(*p.base);
          break;
      }
      break;
    }
    case NodeKind::Empirical:
      j["node"] = "empirical";
      j["points"] = n.empirical->points;
      j["cum"] = n.empirical->cum;
      break;
    case NodeKind::Dirac:
      j["node"] = "dirac";
      j["location"] = n.dirac->location;
      break;
    case NodeKind::Affine:
      j["node"] = "affine";
      j["a"] = n.affine->a;
      j["b"] = n.affine->b;
      j["child"] = to_json(n.affine->child);
      break;
    case NodeKind::Truncate:
      j["node"] = "truncate_below";
      j["cut"] = n.truncate->cut;
      j["child"] = to_json(n.truncate->child);
      break;
    case NodeKind::Pointwise1:
      j["node"] = "pointwise1";
      j["map"] = map_name(n.pw1->map);
      if (n.pw1->map == Map1::ClassicalPower || n.pw1->map == Map1::FreePower ||
          n.pw1->map == Map1::BoolPower)
        j["t"] = n.pw1->t;
      j["child"] = to_json(n.pw1->child);
      break;
    case NodeKind::Pointwise2:
      j["node"] = "pointwise2";
      j["op"] = op_name(n.pw2->op);
      if (n.pw2->op == Op2::Mix) j["weight"] = n.pw2->w;
      j["left"] = to_json(n.pw2->left);
      j["right"] = to_json(n.pw2->right);
      break;
  }
  j["class"] = support_class_name(n.cls);
  return j;
}

namespace {

FamilyKind family_from_name(const std::string& s) {
  if (s == "gumbel") return FamilyKind::Gumbel;
  if (s == "frechet") return FamilyKind::Frechet;
  if (s == "weibull") return FamilyKind::Weibull;
  if (s == "freeexp") return FamilyKind::FreeExponential;
  if (s == "pareto") return FamilyKind::Pareto;
  if (s == "betalaw") return FamilyKind::BetaLaw;
  if (s == "dagum") return FamilyKind::Dagum;
  if (s == "cpc") return FamilyKind::CompoundPoissonClassical;
  if (s == "cpf") return FamilyKind::CompoundPoissonFree;
  throw ParameterError("distfn json: unknown family '" + s + "'");
}

}  // namespace

DistFn distfn_from_json(const json& j) {
  const std::string kind = j.at("node").get<std::string>();
  if (kind == "parametric") {
    FamilyKind fam = family_from_name(j.at("family").get<std::string>());
    families::FamilySpec spec;
    spec.kind = fam;
    switch (fam) {
      case FamilyKind::Gumbel:
      case FamilyKind::FreeExponential:
        break;
      case FamilyKind::Frechet:
      case FamilyKind::Weibull:
      case FamilyKind::Pareto:
      case FamilyKind::BetaLaw:
        spec.p1 = j.at("alpha").get<double>();
        break;
      case FamilyKind::Dagum:
        spec.p1 = j.at("lambda").get<double>();
        spec.p2 = j.at("alpha").get<double>();
        break;
      case FamilyKind::CompoundPoissonClassical:
      case FamilyKind::CompoundPoissonFree:
        spec.p1 = j.at("lambda").get<double>();
        spec.base = distfn_from_json(j.at("base"));
        break;
    }
    return families::make(spec);
  }
  if (kind == "empirical") {
    // Rebuild from points and cumulative probabilities via weight deltas.
    auto pts = j.at("points").get<std::vector<double>>();
    auto cum = j.at("cum").get<std::vector<double>>();
    if (pts.size() != cum.size())
      throw ParameterError("distfn json: empirical arrays differ in length");
    std::vector<double> w(pts.size());
    double prev = 0.0;
    for (size_t i = 0; i < cum.size(); ++i) {
      w[i] = cum[i] - prev;
      prev = cum[i];
    }
    return empirical(std::move(pts), std::move(w));
  }
  if (kind == "dirac") return dirac(j.at("location").get<double>());
  if (kind == "affine")
    return affine_rescale(distfn_from_json(j.at("child")),
                          j.at("a").get<double>(), j.at("b").get<double>());
  if (kind == "truncate_below")
    return truncate_below(distfn_from_json(j.at("child")),
                          j.at("cut").get<double>());
  if (kind == "pointwise1") {
    const std::string m = j.at("map").get<std::string>();
    DistFn child = distfn_from_json(j.at("child"));
    if (m == "classical_pow")
      return power(Conv::Classical, child, j.at("t").get<double>());
    if (m == "free_pow") return free_power_total(child, j.at("t").get<double>());
    if (m == "bool_pow") return power(Conv::Bool, child, j.at("t").get<double>());
    if (m == "lambda_vee") return map_fn(MapKind::LambdaVee, child);
    if (m == "chi") return map_fn(MapKind::Chi, child);
    if (m == "chi_inv") return map_fn(MapKind::ChiInv, child);
    if (m == "b1") return b1_fused_map(child);
    if (m == "b1_inv") return b1_inverse_map(child);
    throw ParameterError("distfn json: unknown map '" + m + "'");
  }
  if (kind == "pointwise2") {
    const std::string op = j.at("op").get<std::string>();
    DistFn l = distfn_from_json(j.at("left"));
    DistFn r = distfn_from_json(j.at("right"));
    if (op == "classical_max") return combine(Conv::Classical, l, r);
    if (op == "free_max") return combine(Conv::Free, l, r);
    if (op == "bool_max") return combine(Conv::Bool, l, r);
    if (op == "mix") return mixture(j.at("weight").get<double>(), l, r);
    throw ParameterError("distfn json: unknown op '" + op + "'");
  }
  throw ParameterError("distfn json: unknown node kind '" + kind + "'");
}

json to_json(const limit_lab::ConvergenceReport& r) {
  json j;
  j["sequence"] = r.sequence;
  j["conv"] = r.conv;
  j["candidate"] = r.candidate;
  j["indices"] = r.indices;
  j["kn"] = r.kn;
  j["sup_distances"] = r.sup_distances;
  j["levy_distances"] = r.levy_distances;
  j["decay_exponent"] = num_or_inf(r.decay_exponent);
  j["threshold"] = r.threshold;
  j["verdict"] = verdict_json(r.verdict);
  j["flags"] = r.flags;
  return j;
}

json to_json(const limit_lab::TheoremCheck& c) {
  json j;
  j["premise"] = to_json(c.premise);
  j["conclusion"] = to_json(c.conclusion);
  j["contract_holds"] = c.contract_holds;
  j["pairing_distance"] = num_or_inf(c.pairing_distance);
  j["notes"] = c.notes;
  return j;
}

json to_json(const limit_lab::CounterexampleReport& r) {
  json j;
  j["free_run"] = to_json(r.free_run);
  j["boolean_run"] = to_json(r.boolean_run);
  j["disagreement_at_half"] = r.disagreement_at_half;
  j["flags"] = r.flags;
  return j;
}

json to_json(const tails::TailReport& r) {
  json j;
  j["probes"] = r.probes;
  j["ratios"] = r.ratios;
  j["estimates"] = r.estimates;
  j["estimated_index"] = r.estimated_index;
  j["residual"] = r.residual;
  j["classification"] = r.classification == tails::TailClass::FrechetDomain
                            ? "frechet-domain"
                            : "not-classified";
  j["notes"] = r.notes;
  return j;
}

}  // namespace maxalg::json_io
