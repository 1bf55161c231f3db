#include "maxalg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "maxalg/families.hpp"
#include "maxalg/transforms.hpp"

namespace maxalg::expr {

namespace {

// --- signatures -------------------------------------------------------------

enum class ParamKind { Number, String, Expr };

struct Param {
  ParamKind kind;
  // numeric constraints
  double min = -std::numeric_limits<double>::infinity();
  bool min_strict = false;
  bool integral = false;
};

Param num_gt(double lo) { return {ParamKind::Number, lo, true, false}; }
Param num_ge(double lo) { return {ParamKind::Number, lo, false, false}; }
Param num_any() { return {ParamKind::Number}; }
Param int_ge(double lo) { return {ParamKind::Number, lo, false, true}; }
Param str() { return {ParamKind::String}; }
Param sub() { return {ParamKind::Expr}; }

const std::map<std::string, std::vector<Param>>& signatures() {
  static const std::map<std::string, std::vector<Param>> table = {
      {"gumbel", {}},
      {"frechet", {num_gt(0)}},
      {"weibull", {num_gt(0)}},
      {"freeexp", {}},
      {"pareto", {num_gt(0)}},
      {"betalaw", {num_gt(0)}},
      {"dagum", {num_gt(0), num_gt(0)}},
      {"cpc", {num_ge(0), sub()}},
      {"cpf", {num_ge(0), sub()}},
      {"prelimit", {num_ge(0), sub(), int_ge(1)}},
      {"maxc", {sub(), sub()}},
      {"maxf", {sub(), sub()}},
      {"maxb", {sub(), sub()}},
      {"powc", {sub(), num_gt(0)}},
      {"powf", {sub(), num_ge(1)}},
      {"powb", {sub(), num_ge(0)}},
      {"lambda", {sub()}},
      {"chi", {sub()}},
      {"chiinv", {sub()}},
      {"bn", {sub(), num_ge(0)}},
      {"tocl", {sub()}},
      {"tobool", {sub()}},
      {"scale", {sub(), num_gt(0), num_any()}},
      {"truncate", {sub(), num_any()}},
      {"dirac", {num_any()}},
      {"empirical", {str()}},
  };
  return table;
}

void check_against_signature(const Ast& node) {
  auto it = signatures().find(node.name);
  if (it == signatures().end())
    throw RangeError("unknown function '" + node.name + "'");
  const auto& params = it->second;
  if (node.args.size() != params.size())
    throw ArityError("arity error: " + node.name + " expects " +
                     std::to_string(params.size()) + " argument(s), got " +
                     std::to_string(node.args.size()));
  for (size_t i = 0; i < params.size(); ++i) {
    const Param& p = params[i];
    const Arg& a = node.args[i];
    const std::string where =
        node.name + " argument " + std::to_string(i + 1);
    switch (p.kind) {
      case ParamKind::Number: {
        if (a.kind != Arg::Kind::Number)
          throw ArityError("arity error: " + where + " must be a number");
        bool ok = p.min_strict ? a.number > p.min : a.number >= p.min;
        if (!ok)
          throw RangeError("range error: " + where + " must be " +
                           (p.min_strict ? "> " : ">= ") +
                           std::to_string(p.min) + ", got " +
                           std::to_string(a.number));
        if (p.integral && std::abs(a.number - std::round(a.number)) > 1e-9)
          throw RangeError("range error: " + where + " must be an integer");
        break;
      }
      case ParamKind::String:
        if (a.kind != Arg::Kind::String)
          throw ArityError("arity error: " + where + " must be a string");
        break;
      case ParamKind::Expr:
        if (a.kind != Arg::Kind::Expr)
          throw ArityError("arity error: " + where + " must be an expression");
        break;
    }
  }
}

// --- parser -------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AstPtr run() {
    AstPtr root = parse_call();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(pos_, what);
    ++pos_;
  }

  AstPtr parse_call() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw ParseError(pos_, "identifier");
    Ast node;
    node.name.assign(text_.substr(start, pos_ - start));
    std::transform(node.name.begin(), node.name.end(), node.name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    expect('(', "'('");
    if (!peek_is(')')) {
      node.args.push_back(parse_arg());
      while (peek_is(',')) {
        ++pos_;
        node.args.push_back(parse_arg());
      }
    }
    expect(')', "')' or ','");
    check_against_signature(node);
    return std::make_shared<const Ast>(std::move(node));
  }

  Arg parse_arg() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "number, string, or call");
    char c = text_[pos_];
    if (c == '"') return parse_string();
    if (c == '-' || c == '+' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c)))
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return Arg::make_expr(parse_call());
    throw ParseError(pos_, "number, string, or call");
  }

  Arg parse_string() {
    ++pos_;  // opening quote
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
    if (pos_ >= text_.size()) throw ParseError(pos_, "closing '\"'");
    std::string s(text_.substr(start, pos_ - start));
    ++pos_;
    return Arg::make_string(std::move(s));
  }

  Arg parse_number() {
    skip_ws();
    size_t start = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end == first)
      throw ParseError(start, "number, string, or call");
    pos_ += static_cast<size_t>(end - first);
    return Arg::make_number(value);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

// --- printing -----------------------------------------------------------------

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

void print_into(const Ast& a, std::string& out) {
  out += a.name;
  out += '(';
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i > 0) out += ", ";
    const Arg& arg = a.args[i];
    switch (arg.kind) {
      case Arg::Kind::Number:
        out += format_number(arg.number);
        break;
      case Arg::Kind::String:
        out += '"';
        out += arg.text;
        out += '"';
        break;
      case Arg::Kind::Expr:
        print_into(*arg.expr, out);
        break;
    }
  }
  out += ')';
}

// --- elaboration -----------------------------------------------------------------

DistFn elaborate_node(const Ast& a, const std::string& path) {
  auto child = [&](size_t i) {
    return elaborate_node(*a.args[i].expr,
                          path + "." + a.name + "[" + std::to_string(i) + "]");
  };
  auto num = [&](size_t i) { return a.args[i].number; };
  try {
    if (a.name == "gumbel") return families::gumbel();
    if (a.name == "frechet") return families::frechet(num(0));
    if (a.name == "weibull") return families::weibull(num(0));
    if (a.name == "freeexp") return families::free_exponential();
    if (a.name == "pareto") return families::pareto(num(0));
    if (a.name == "betalaw") return families::beta_law(num(0));
    if (a.name == "dagum") return families::dagum(num(0), num(1));
    if (a.name == "cpc")
      return families::compound_poisson_classical(num(0), child(1));
    if (a.name == "cpf")
      return families::compound_poisson_free(num(0), child(1));
    if (a.name == "prelimit")
      return families::cp_prelimit(num(0), child(1),
                                   static_cast<long>(std::llround(num(2))));
    if (a.name == "maxc") return combine(Conv::Classical, child(0), child(1));
    if (a.name == "maxf") return combine(Conv::Free, child(0), child(1));
    if (a.name == "maxb") return combine(Conv::Bool, child(0), child(1));
    if (a.name == "powc") return power(Conv::Classical, child(0), num(1));
    if (a.name == "powf") return power(Conv::Free, child(0), num(1));
    if (a.name == "powb") return power(Conv::Bool, child(0), num(1));
    if (a.name == "lambda") return map_fn(MapKind::LambdaVee, child(0));
    if (a.name == "chi") return map_fn(MapKind::Chi, child(0));
    if (a.name == "chiinv") return map_fn(MapKind::ChiInv, child(0));
    if (a.name == "bn") return transforms::bn(child(0), num(1));
    if (a.name == "tocl") return transforms::boolean_to_classical(child(0));
    if (a.name == "tobool") return transforms::classical_to_boolean(child(0));
    if (a.name == "scale") return affine_rescale(child(0), num(1), num(2));
    if (a.name == "truncate") return truncate_below(child(0), num(1));
    if (a.name == "dirac") return dirac(num(0));
    if (a.name == "empirical") return empirical_from_csv(a.args[0].text);
  } catch (const ClassError& e) {
    std::string m = e.what();
    if (m.find("(at $") == std::string::npos)
      m += " (at " + path + "." + a.name + ")";
    throw ClassError(m);
  } catch (const ParameterError& e) {
    std::string m = e.what();
    if (m.find("(at $") == std::string::npos)
      m += " (at " + path + "." + a.name + ")";
    throw ParameterError(m);
  }
  throw RangeError("unknown function '" + a.name + "'");
}

}  // namespace

bool structurally_equal(const Ast& a, const Ast& b) {
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Arg& x = a.args[i];
    const Arg& y = b.args[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Arg::Kind::Number:
        if (!(x.number == y.number)) return false;
        break;
      case Arg::Kind::String:
        if (x.text != y.text) return false;
        break;
      case Arg::Kind::Expr:
        if (!structurally_equal(*x.expr, *y.expr)) return false;
        break;
    }
  }
  return true;
}

AstPtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Ast& ast) {
  std::string out;
  print_into(ast, out);
  return out;
}

DistFn elaborate(const Ast& ast) { return elaborate_node(ast, "$"); }

DistFn eval_expression(std::string_view text) { return elaborate(*parse(text)); }

}  // namespace maxalg::expr
