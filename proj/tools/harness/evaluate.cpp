#include "evaluate.hpp"

#include "qlag/bcjackson.hpp"
#include "qlag/errors.hpp"
#include "qlag/interp.hpp"
#include "qlag/qnum.hpp"
#include "qlag/transition.hpp"

#include <sstream>
#include <stdexcept>

namespace qlag::harness {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Args {
 public:
  Args(const nlohmann::json& inputs, const PrecisionContext& ctx) : inputs_(inputs), ctx_(ctx) {
    if (!inputs_.is_object()) throw ConfigError("inputs must be an object");
  }

  bool has(const std::string& key) const { return inputs_.contains(key); }

  Complex complex(const std::string& key) const { return parse_complex(raw(key), key); }

  std::vector<Complex> complex_list(const std::string& key) const {
    const auto& v = raw(key);
    std::vector<Complex> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(parse_complex(e, key));
    } else {
      for (const auto& part : split(text(v, key), ';')) out.push_back(parse_complex(part, key));
    }
    return out;
  }

  long integer(const std::string& key) const {
    const auto& v = raw(key);
    if (v.is_number_integer()) return v.get<long>();
    try {
      std::size_t used = 0;
      long out = std::stol(text(v, key), &used);
      if (used != text(v, key).size()) throw std::invalid_argument(key);
      return out;
    } catch (const std::logic_error&) {
      throw ConfigError("argument '" + key + "' is not an integer");
    }
  }

  std::vector<int> integer_list(const std::string& key) const {
    const auto& v = raw(key);
    std::vector<int> out;
    try {
      if (v.is_array()) {
        for (const auto& e : v) out.push_back(e.is_number_integer() ? e.get<int>() : std::stoi(e.get<std::string>()));
      } else {
        for (const auto& part : split(text(v, key), ',')) out.push_back(std::stoi(part));
      }
    } catch (const std::exception&) {
      throw ConfigError("argument '" + key + "' is not an integer list");
    }
    return out;
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(raw(key), key) : fallback;
  }

 private:
  const nlohmann::json& raw(const std::string& key) const {
    if (!inputs_.contains(key)) throw ConfigError("missing argument '" + key + "'");
    return inputs_.at(key);
  }

  static std::string text(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("argument '" + key + "' must be a string");
    return v.get<std::string>();
  }

  Complex parse_complex(const nlohmann::json& v, const std::string& key) const {
    try {
      if (v.is_array() && v.size() == 2) {
        return Complex(Real::parse(v[0].get<std::string>(), ctx_.prec()),
                       Real::parse(v[1].get<std::string>(), ctx_.prec()));
      }
      if (v.is_number()) return Complex(v.get<double>(), 0.0, ctx_.prec());
      return Complex::parse(text(v, key), ctx_.prec());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("argument '" + key + "' is not a complex number");
    }
  }

  const nlohmann::json& inputs_;
  const PrecisionContext& ctx_;
};

InterpMethod parse_method(const std::string& name) {
  for (auto m : {InterpMethod::Explicit, InterpMethod::Recursive, InterpMethod::Triangular}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown interpolation method '" + name + "'");
}

ParameterSet jackson_parameters(const Args& args, int n) {
  ParameterSet p;
  p.a = args.complex_list("a");
  if (p.a.size() < 4 || p.a.size() % 2 != 0) throw ConfigError("'a' needs 2s+2 entries");
  p.s = static_cast<int>(p.a.size() / 2) - 1;
  p.n = n;
  p.t = args.complex("t");
  p.x = args.has("x") ? args.complex_list("x") : std::vector<Complex>{};
  if (p.x.empty()) p.x.assign(static_cast<std::size_t>(p.s), Complex(1L, p.t.precision()));
  return p;
}

}  // namespace

const std::vector<std::string>& eval_kinds() {
  static const std::vector<std::string> kinds = {"theta",  "qpoch",          "e-symbol",          "e-factorial",
                                                 "schur",  "interp",         "transition-det",    "vandiejen-product",
                                                 "wronskian-closed", "jackson"};
  return kinds;
}

Complex evaluate(std::string_view kind, const nlohmann::json& inputs, const PrecisionContext& ctx) {
  Args args(inputs, ctx);
  if (kind == "theta") return theta(args.complex("u"), ctx);
  if (kind == "qpoch") {
    if (args.string("nu", "inf") == "inf") return qpoch_inf(args.complex("u"), ctx);
    return qpoch(args.complex("u"), args.integer("nu"), ctx);
  }
  if (kind == "e-symbol") return e_symbol(args.complex("a"), args.complex("b"), ctx);
  if (kind == "e-factorial") {
    return e_factorial(args.complex("a"), args.complex("b"), args.complex("t"), args.integer("r"), ctx);
  }
  if (kind == "schur") {
    return symplectic_schur(MultiIndex{args.integer_list("lambda"), IndexKind::B}, args.complex_list("z"), ctx);
  }
  if (kind == "interp") {
    MultiIndex lambda{args.integer_list("lambda"), IndexKind::Z};
    auto x = args.complex_list("x");
    if (lambda.size() != x.size()) throw ConfigError("'lambda' and 'x' must have the same length");
    LagrangeBasis basis(x, args.complex("t"), lambda.sum(), ctx);
    // Without z the basis is evaluated at the node x_mu, mu = 'at' (default lambda).
    std::vector<Complex> z;
    if (args.has("z")) {
      z = args.complex_list("z");
    } else {
      z = basis.point(args.has("at") ? MultiIndex{args.integer_list("at"), IndexKind::Z} : lambda);
    }
    return basis.evaluate(lambda, z, parse_method(args.string("method", "explicit")));
  }
  if (kind == "transition-det") {
    return transition_det_closed(args.complex_list("x"), args.complex_list("y"), args.complex("t"),
                                 static_cast<int>(args.integer("n")), ctx);
  }
  if (kind == "vandiejen-product") {
    return vandiejen_product(jackson_parameters(args, static_cast<int>(args.integer("n"))), ctx);
  }
  if (kind == "wronskian-closed") {
    return wronskian_closed(jackson_parameters(args, static_cast<int>(args.integer("n"))), ctx);
  }
  if (kind == "jackson") {
    auto z = args.complex_list("z");
    auto p = jackson_parameters(args, static_cast<int>(z.size()));
    auto trunc = LatticeTruncation::defaults_for(p.n);
    if (args.has("radius")) trunc.radius = static_cast<int>(args.integer("radius"));
    auto phi = args.has("lambda")
                   ? schur_integrand({MultiIndex{args.integer_list("lambda"), IndexKind::B}})
                   : constant_integrand();
    return regularized_integral(*phi, z, p, trunc, ctx).value();
  }
  throw ConfigError("unknown eval kind '" + std::string(kind) + "'");
}

nlohmann::json parse_assignments(const std::vector<std::string>& args) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + a + "'");
    out[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return out;
}

}  // namespace qlag::harness
