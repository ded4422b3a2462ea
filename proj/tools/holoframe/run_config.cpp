#include "run_config.hpp"

#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "holoframe/types.hpp"

namespace holoframe::cli {

namespace pt = boost::property_tree;

Command parse_command(const std::string& s) {
  if (s == "check") return Command::check;
  if (s == "solve") return Command::solve;
  if (s == "verify") return Command::verify;
  if (s == "norms") return Command::norms;
  throw ParseError("unknown command '" + s + "' (expected check, solve, verify or norms)");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::check:
      return "check";
    case Command::solve:
      return "solve";
    case Command::verify:
      return "verify";
    case Command::norms:
      return "norms";
  }
  return "check";
}

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"command", "seed", "threads", "output_dir"}},
      {"algebra", {"name", "file"}},
      {"domain", {"n", "radius", "spacing", "subdomain_fraction"}},
      {"input", {"fixture", "file", "expression", "degree"}},
      {"solver", {"mode", "normalization", "cg_tolerance", "cg_max_iters"}},
      {"newton",
       {"tolerance", "max_iters", "dexp_truncation", "series_tolerance", "epsilon_schedule",
        "accept_ratio_window", "check_integrability"}},
      {"holder", {"kappa", "exhaustive_limit", "sampled_pairs", "force_exhaustive"}},
      {"verify",
       {"radius", "spacing", "degree", "terms", "input_bound", "tolerance", "abelian_tolerance",
        "jacobi_tolerance", "slab_columns", "margin_eps", "margin_tolerance"}},
      {"norms", {"refinements"}},
  };
  return keys;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const std::string s = item.substr(b);
      out.push_back(std::stod(s, &used));
      if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ParseError("[" + key + "] expects a comma-separated list of numbers, got '" + text + "'");
    }
  }
  return out;
}

/// Typed lookup that names the offending key on failure.
class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <class T>
  std::optional<T> get(const std::string& path) const {
    const auto node = tree_.get_child_optional(pt::ptree::path_type(path, '.'));
    if (!node) return std::nullopt;
    if (auto v = node->get_value_optional<T>()) return *v;
    throw ParseError("config key '" + path + "' has invalid value '" + node->data() + "'");
  }

  template <class T>
  void set(const std::string& path, T& target) const {
    if (auto v = get<T>(path)) target = *v;
  }

 private:
  const pt::ptree& tree_;
};

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) throw ParseError("config: unknown section [" + section + "]");
    if (!body.data().empty()) throw ParseError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ParseError("config: unknown key '" + key + "' in [" + section + "]");
  }

  const Reader r(tree);
  RunConfig c;
  if (auto s = r.get<std::string>("run.command")) c.command = parse_command(*s);
  r.set("run.seed", c.seed);
  r.set("run.threads", c.threads);
  if (auto s = r.get<std::string>("run.output_dir")) c.output_dir = *s;

  r.set("algebra.name", c.algebra_name);
  if (auto s = r.get<std::string>("algebra.file")) c.algebra_file = *s;

  c.n = r.get<int>("domain.n");
  c.radius = r.get<double>("domain.radius");
  c.spacing = r.get<double>("domain.spacing");
  r.set("domain.subdomain_fraction", c.subdomain_fraction);

  r.set("input.fixture", c.fixture);
  if (auto s = r.get<std::string>("input.file")) c.input_file = *s;
  r.set("input.expression", c.expression);
  r.set("input.degree", c.input_degree);

  c.solver_mode = r.get<std::string>("solver.mode");
  c.normalization = r.get<std::string>("solver.normalization");
  r.set("solver.cg_tolerance", c.cg_tolerance);
  r.set("solver.cg_max_iters", c.cg_max_iters);

  r.set("newton.tolerance", c.newton.newton_tolerance);
  r.set("newton.max_iters", c.newton.max_newton_iters);
  r.set("newton.dexp_truncation", c.newton.dexp_truncation);
  r.set("newton.series_tolerance", c.newton.series_tolerance);
  if (auto s = r.get<std::string>("newton.epsilon_schedule"))
    c.newton.epsilon_schedule = parse_list(*s, "newton.epsilon_schedule");
  r.set("newton.accept_ratio_window", c.newton.accept_ratio_window);
  r.set("newton.check_integrability", c.newton.check_integrability);

  r.set("holder.kappa", c.kappa);
  r.set("holder.exhaustive_limit", c.exhaustive_limit);
  r.set("holder.sampled_pairs", c.sampled_pairs);
  r.set("holder.force_exhaustive", c.force_exhaustive);

  r.set("verify.radius", c.suite.radius);
  r.set("verify.spacing", c.suite.spacing);
  r.set("verify.degree", c.suite.degree);
  r.set("verify.terms", c.suite.terms);
  r.set("verify.input_bound", c.suite.input_bound);
  r.set("verify.tolerance", c.suite.tolerance);
  r.set("verify.abelian_tolerance", c.suite.abelian_tolerance);
  r.set("verify.jacobi_tolerance", c.jacobi_tolerance);
  r.set("verify.slab_columns", c.suite.slab_columns);
  if (auto s = r.get<std::string>("verify.margin_eps")) c.margin_eps = parse_list(*s, "verify.margin_eps");
  r.set("verify.margin_tolerance", c.margin_tolerance);

  if (auto s = r.get<std::string>("norms.refinements")) c.refinements = parse_list(*s, "norms.refinements");

  const std::filesystem::path base = path.parent_path();
  for (auto* file : {&c.algebra_file, &c.input_file})
    if (!file->empty() && file->is_relative()) *file = base / *file;
  return c;
}

void RunConfig::validate() const {
  if (!algebra_name.empty() && !algebra_file.empty())
    throw ParseError("config: give only one of [algebra] name or file");
  if (algebra_name.empty() && algebra_file.empty() && fixture.empty())
    throw ParseError("config: no algebra given");
  const int sources = int(!fixture.empty()) + int(!input_file.empty()) + int(!expression.empty());
  if (sources > 1) throw ParseError("config: give exactly one input source (fixture, file or expression)");
  if (sources == 0 && command != Command::verify) throw ParseError("config: no input form given");
  if (n && *n != 1 && *n != 2) throw ParseError("config: [domain] n must be 1 or 2");
  if (radius && !(*radius > 0.0)) throw ParseError("config: [domain] radius must be positive");
  if (spacing && !(*spacing > 0.0)) throw ParseError("config: [domain] spacing must be positive");
  if (!(subdomain_fraction > 0.0 && subdomain_fraction < 1.0))
    throw ParseError("config: [domain] subdomain_fraction must lie in (0, 1)");
  if (input_degree < 0 || input_degree > 2) throw ParseError("config: [input] degree must be 0, 1 or 2");
  if (threads < 1) throw ParseError("config: threads must be at least 1");
  if (!(cg_tolerance > 0.0) || cg_max_iters < 0) throw ParseError("config: invalid [solver] block");
  if (!(suite.spacing > 0.0) || !(suite.radius > 0.0) || suite.terms < 1 || suite.degree < 0 ||
      suite.slab_columns < 1)
    throw ParseError("config: invalid [verify] block");
  for (double e : margin_eps)
    if (!(e > 0.0) || e > 1.0) throw ParseError("config: [verify] margin_eps entries must lie in (0, 1]");
  for (double h : refinements)
    if (!(h > 0.0)) throw ParseError("config: [norms] refinements must be positive spacings");
  try {
    (void)HolderSpec::from_kappa(kappa);
    newton.validate();
    if (solver_mode) (void)parse_solver_mode(*solver_mode);
    if (normalization) (void)parse_normalization(*normalization);
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

CanonicalSolver RunConfig::solver_for(int dimension) const {
  CanonicalSolver S = CanonicalSolver::for_dimension(dimension);
  if (solver_mode) S.mode = parse_solver_mode(*solver_mode);
  if (normalization) S.normalization = parse_normalization(*normalization);
  S.cg_tolerance = cg_tolerance;
  S.cg_max_iters = cg_max_iters;
  return S;
}

HolderOptions RunConfig::holder_options() const {
  HolderOptions o;
  o.force_exhaustive = force_exhaustive;
  o.exhaustive_limit = exhaustive_limit;
  o.sampled_pairs = sampled_pairs;
  o.seed = seed;
  return o;
}

nlohmann::json RunConfig::to_json() const {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["run"] = {{"command", cli::to_string(command)}, {"seed", seed}, {"output_dir", output_dir.string()}};
  j["algebra"] = {{"name", algebra_name}, {"file", algebra_file.string()}};
  j["domain"] = {{"n", opt(n)}, {"radius", opt(radius)}, {"spacing", opt(spacing)},
                 {"subdomain_fraction", subdomain_fraction}};
  j["input"] = {{"fixture", fixture}, {"file", input_file.string()}, {"expression", expression},
                {"degree", input_degree}};
  j["solver"] = {{"mode", opt(solver_mode)}, {"normalization", opt(normalization)},
                 {"cg_tolerance", cg_tolerance}, {"cg_max_iters", cg_max_iters}};
  j["newton"] = {{"tolerance", newton.newton_tolerance},
                 {"max_iters", newton.max_newton_iters},
                 {"dexp_truncation", newton.dexp_truncation},
                 {"series_tolerance", newton.series_tolerance},
                 {"epsilon_schedule", newton.epsilon_schedule},
                 {"accept_ratio_window", newton.accept_ratio_window},
                 {"check_integrability", newton.check_integrability}};
  j["holder"] = {{"kappa", kappa},
                 {"exhaustive_limit", exhaustive_limit},
                 {"sampled_pairs", sampled_pairs},
                 {"force_exhaustive", force_exhaustive}};
  j["verify"] = {{"radius", suite.radius},
                 {"spacing", suite.spacing},
                 {"degree", suite.degree},
                 {"terms", suite.terms},
                 {"input_bound", suite.input_bound},
                 {"tolerance", suite.tolerance},
                 {"abelian_tolerance", suite.abelian_tolerance},
                 {"jacobi_tolerance", jacobi_tolerance},
                 {"slab_columns", suite.slab_columns},
                 {"margin_eps", margin_eps},
                 {"margin_tolerance", margin_tolerance}};
  j["norms"] = {{"refinements", refinements}};
  return j;
}

}  // namespace holoframe::cli
