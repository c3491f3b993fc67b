#include "cointreg/config.hpp"

#include "cointreg/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cointreg {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key)
{
  return path.empty() ? key : path + "." + key;
}

// Object reader that remembers which keys were consumed so the rest can be
// rejected as unknown.
class Section {
public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path))
  {
    if (!node_.is_object())
      throw ConfigError(where() + ": expected an object");
  }

  ~Section() noexcept(false)
  {
    if (std::uncaught_exceptions() > 0)
      return;
    for (const auto& [key, value] : node_.items())
      if (!used_.count(key))
        throw ConfigError(join(path_, key) + ": unknown key");
  }

  bool has(const std::string& key)
  {
    used_.insert(key);
    return node_.contains(key);
  }

  template <class T> T get(const std::string& key, T fallback)
  {
    return has(key) ? convert<T>(key) : fallback;
  }

  template <class T> std::optional<T> optional(const std::string& key)
  {
    if (!has(key) || node_.at(key).is_null())
      return std::nullopt;
    return convert<T>(key);
  }

  template <class T> T required(const std::string& key)
  {
    if (!has(key))
      throw ConfigError(join(path_, key) + ": required key missing");
    return convert<T>(key);
  }

  Section child(const std::string& key)
  {
    used_.insert(key);
    return Section(node_.contains(key) ? node_.at(key) : empty(), join(path_, key));
  }

  std::string key_path(const std::string& key) const { return join(path_, key); }
  std::string where() const { return path_.empty() ? "config" : path_; }

  /// Runs a validator and prefixes any InvalidParameter with this path.
  template <class F> void check(F&& validator)
  {
    try {
      validator();
    } catch (const InvalidParameter& e) {
      throw ConfigError(where() + ": " + e.what());
    }
  }

private:
  static const json& empty()
  {
    static const json object = json::object();
    return object;
  }

  template <class T> T convert(const std::string& key)
  {
    const json& v = node_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean())
        throw ConfigError(key_path(key) + ": expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError(key_path(key) + ": expected a nonnegative integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number())
        throw ConfigError(key_path(key) + ": expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string())
        throw ConfigError(key_path(key) + ": expected a string");
    } else {
      if (!v.is_array())
        throw ConfigError(key_path(key) + ": expected an array");
      for (const auto& e : v)
        if (!e.is_number())
          throw ConfigError(key_path(key) + ": expected an array of numbers");
    }
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(key_path(key) + ": value out of range");
    }
  }

  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

template <class F> auto translate(const std::string& path, F&& f)
{
  try {
    return f();
  } catch (const InvalidParameter& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

DgpConfig parse_dgp(Section dgp_node)
{
  DgpConfig cfg;

  {
    auto s = dgp_node.child("innovations");
    cfg.innov.stable.alpha = s.get("alpha", 2.0);
    cfg.innov.stable.beta = s.get("beta", 0.0);
    cfg.innov.stable.scale = s.get("scale", 0.5);
    cfg.innov.endo_rho = s.get("endo_rho", 0.0);
    cfg.innov.eta_q0 = s.get("q0", 8.0);
    s.check([&] { cfg.innov.validate(); });
  }

  {
    auto s = dgp_node.child("regressor");
    cfg.coeff.alpha = cfg.innov.stable.alpha;
    cfg.coeff.regime = translate(s.key_path("regime"), [&] { return parse_regime(s.get<std::string>("regime", "SM")); });
    cfg.coeff.H = s.get("H", 1.0 / cfg.coeff.alpha);
    cfg.coeff.sm_phi = s.get("phi", std::vector<double>{1.0});
    cfg.coeff.max_lag = s.get<std::size_t>("max_lag", 10'000);
    s.check([&] { cfg.coeff.validate(); });
  }

  {
    auto s = dgp_node.child("disturbance");
    ThetaSpec spec;
    const auto kind = s.get<std::string>("kind", "geometric");
    if (kind == "geometric")
      spec.kind = ThetaKind::geometric;
    else if (kind == "polynomial")
      spec.kind = ThetaKind::polynomial;
    else if (kind == "explicit")
      spec.kind = ThetaKind::explicit_list;
    else
      throw ConfigError(s.key_path("kind") + ": must be geometric, polynomial or explicit (got '" + kind + "')");
    spec.parameter = s.get("parameter", 0.5);
    spec.coefficients = s.get("coefficients", std::vector<double>{});
    const auto lags = s.get<std::size_t>("lags", 199);
    if (spec.kind != ThetaKind::explicit_list && s.has("coefficients") && !spec.coefficients.empty())
      throw ConfigError(s.key_path("coefficients") + ": only allowed with kind = explicit");
    cfg.theta = translate(s.where(), [&] { return build_theta(spec, lags); });
    cfg.waive_theta_check = s.get("waive_check", false);
  }

  {
    auto s = dgp_node.child("m0");
    const auto id = s.get<std::string>("id", "zero");
    const double a = s.get("a", id == "bspline" ? 1.0 : (id == "linear" || id == "linear_sin" ? 1.0 : 0.0));
    const double b = s.get("b", 0.0);
    cfg.m0 = translate(s.key_path("id"), [&] { return make_regression_function(id, a, b); });
  }

  cfg.burn_in = dgp_node.optional<std::size_t>("burn_in");
  cfg.rho_scale = dgp_node.optional<double>("rho_scale");
  dgp_node.check([&] { cfg.validate(); });
  return cfg;
}

BandwidthRule parse_bandwidth(Section s, double q0)
{
  BandwidthRule rule;
  const auto kind = s.get<std::string>("rule", "fixed");
  if (kind == "fixed") {
    rule = BandwidthRule::fixed(s.get("h", 0.5));
  } else if (kind == "power") {
    rule = BandwidthRule::power(s.get("c", 1.0), s.get("kappa", 0.2));
  } else if (kind == "plugin") {
    rule = BandwidthRule::plugin(s.get("c", 1.0));
  } else {
    throw ConfigError(s.key_path("rule") + ": must be fixed, power or plugin (got '" + kind + "')");
  }
  rule.r0 = s.get("r0", 1.0 / q0);
  rule.h_upper = s.get("h_upper", 1.0);
  s.check([&] { rule.validate(); });
  return rule;
}

} // namespace

RateExperimentConfig RunConfig::rate_experiment() const
{
  RateExperimentConfig cfg;
  cfg.dgp = dgp;
  cfg.estimator = estimator;
  cfg.kernel = kernel;
  cfg.bandwidth = bandwidth;
  cfg.eps = eps;
  cfg.domain = domain;
  cfg.n_grid = n_grid;
  cfg.reps = reps;
  cfg.base_seed = seed;
  cfg.grid = grid;
  cfg.threads = threads;
  return cfg;
}

OrderExperimentConfig RunConfig::order_experiment() const
{
  OrderExperimentConfig cfg;
  cfg.dgp = dgp;
  cfg.kernel = kernel;
  cfg.bandwidth = bandwidth;
  cfg.n_grid = n_grid;
  cfg.reps = reps;
  cfg.base_seed = seed;
  cfg.grid = grid;
  cfg.threads = threads;
  return cfg;
}

RunConfig parse_run_config(const std::string& text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }

  RunConfig cfg;
  {
    Section root(doc, "");
    if (!root.has("schema_version"))
      throw ConfigError("schema_version: required key missing");
    const auto version = root.required<int>("schema_version");
    if (version != kSchemaVersion)
      throw ConfigError("schema_version: unsupported version " + std::to_string(version));

    cfg.dgp = parse_dgp(root.child("dgp"));
    cfg.kernel = translate("kernel", [&] { return kernel_by_id(root.get<std::string>("kernel", "epanechnikov")); });
    cfg.bandwidth = parse_bandwidth(root.child("bandwidth"), cfg.dgp.innov.eta_q0);

    {
      auto s = root.child("grid");
      cfg.grid.resolution = s.get("resolution", cfg.grid.resolution);
      cfg.grid.range_nodes = s.get("range_nodes", cfg.grid.range_nodes);
      if (!(cfg.grid.resolution >= 1.0))
        throw ConfigError(s.key_path("resolution") + ": must be at least 1");
      if (cfg.grid.range_nodes < 16)
        throw ConfigError(s.key_path("range_nodes") + ": must be at least 16");
    }

    {
      auto s = root.child("estimate");
      cfg.estimator = translate(s.key_path("estimator"),
                                [&] { return parse_estimator(s.get<std::string>("estimator", "LL")); });
      cfg.domain = translate(s.key_path("domain"), [&] { return parse_domain_kind(s.get<std::string>("domain", "A")); });
      cfg.eps = s.get("eps", 0.05);
      if (!(cfg.eps >= 0.0) || (cfg.domain == DomainKind::R && cfg.eps >= 1.0))
        throw ConfigError(s.key_path("eps") + ": out of range");
    }

    {
      auto s = root.child("experiment");
      cfg.n_grid = s.get("n_grid", std::vector<std::size_t>{});
      cfg.reps = s.get<std::size_t>("reps", 1);
      if (cfg.reps < 1)
        throw ConfigError(s.key_path("reps") + ": must be at least 1");
      for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
        if (cfg.n_grid[i] <= cfg.n_grid[i - 1])
          throw ConfigError(s.key_path("n_grid") + ": n_grid must be strictly increasing");
      if (s.has("slope_band")) {
        const auto band = s.required<std::vector<double>>("slope_band");
        if (band.size() != 2 || !(band[0] <= band[1]))
          throw ConfigError(s.key_path("slope_band") + ": expected [lo, hi] with lo <= hi");
        cfg.slope_band = SlopeBand{band[0], band[1]};
      }
    }

    cfg.n = root.get<std::size_t>("n", cfg.n);
    if (cfg.n < 2)
      throw ConfigError("n: must be at least 2");
    cfg.seed = root.get<std::uint64_t>("seed", 0);
    cfg.output = root.get<std::string>("output", "");
    cfg.threads = root.get<unsigned>("threads", 1);
  }
  cfg.canonical = doc.dump();
  return cfg;
}

RunConfig load_run_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

} // namespace cointreg
