#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <locale>
#include <optional>
#include <sstream>

#include "seqlab/blocks.hpp"
#include "seqlab/characterize.hpp"
#include "seqlab/duality.hpp"
#include "seqlab/equivalence.hpp"
#include "seqlab/error.hpp"
#include "seqlab/io.hpp"
#include "seqlab/projections.hpp"

namespace seqlab::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string space_path;
  std::optional<std::size_t> nmax;
  std::optional<std::size_t> mmax;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out_path;
  std::string format = "csv";
  bool strict = false;
  std::string alpha;
  std::string coeffs;
  std::string boundaries;
};

// Per-command defaults; the Tsirelson recursion needs much smaller problems.
struct Defaults {
  std::size_t nmax;
  std::size_t mmax;
  std::size_t budget;
};

Defaults defaults_for(const std::string& command, const SpaceSpec& spec) {
  const bool t = spec.family() == Family::Tsirelson;
  if (command == "analyze") return t ? Defaults{16, 0, 20000} : Defaults{4096, 0, 200000};
  if (command == "sweep") return t ? Defaults{8, 8, 1000} : Defaults{64, 64, 10000};
  if (command == "project") return t ? Defaults{4, 4, 1000} : Defaults{8, 16, 10000};
  if (command == "dualcheck") return t ? Defaults{16, 0, 20000} : Defaults{256, 0, 200000};
  return t ? Defaults{64, 4, 1000} : Defaults{4096, 64, 10000};
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream one(item);
    one.imbue(std::locale::classic());
    T v{};
    one >> v;
    if (one.fail() || !(one >> std::ws).eof()) throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(what) + " must not be empty");
  return out;
}

class Command {
 public:
  Command(std::string name, const Options& opts)
      : name_(std::move(name)), opts_(opts), spec_(load_space(opts.space_path)), defaults_(defaults_for(name_, spec_)) {
    if (opts_.format != "csv" && opts_.format != "json") throw ConfigError("--format must be csv or json");
  }

  std::size_t nmax() const { return opts_.nmax.value_or(defaults_.nmax); }
  std::size_t mmax() const { return opts_.mmax.value_or(defaults_.mmax); }
  std::size_t budget() const { return opts_.budget.value_or(defaults_.budget); }
  bool csv() const { return opts_.format == "csv"; }
  const SpaceSpec& spec() const { return spec_; }
  const Options& options() const { return opts_; }

  json config() const {
    json c{{"command", name_},
           {"space", to_json(spec_)},
           {"nmax", nmax()},
           {"budget", budget()},
           {"seed", opts_.seed},
           {"threads", opts_.threads},
           {"format", opts_.format},
           {"strict", opts_.strict}};
    if (defaults_.mmax > 0 || opts_.mmax) c["mmax"] = mmax();
    if (!opts_.alpha.empty()) c["alpha"] = opts_.alpha;
    if (!opts_.coeffs.empty()) c["coeffs"] = opts_.coeffs;
    if (!opts_.boundaries.empty()) c["boundaries"] = opts_.boundaries;
    return c;
  }

  void csv_header(std::ostream& os) const {
    os << "# " << kToolName << ' ' << kVersion << '\n';
    os << "# config " << config().dump() << '\n';
  }

  json json_envelope() const { return {{"tool", kToolName}, {"version", kVersion}, {"config", config()}}; }

 private:
  std::string name_;
  Options opts_;
  SpaceSpec spec_;
  Defaults defaults_;
};

// Returns true when some search ran out of budget.
bool analyze(const Command& cmd, std::ostream& os) {
  DualBudget dual;
  dual.evaluations = cmd.budget();
  dual.seed = cmd.options().seed;
  const std::vector<std::size_t> grid = dyadic_grid(cmd.nmax());
  if (grid.empty()) throw ConfigError("--nmax must be >= 2");
  const GrowthTable table = growth_table(cmd.spec(), grid, cmd.nmax(), dual);
  if (cmd.csv()) {
    cmd.csv_header(os);
    os << "n,lambda,mu,bracket,mu_exact\n";
    for (const GrowthRow& r : table.rows) {
      os << r.n << ',' << format_double(r.lambda) << ',' << format_double(r.mu) << ',' << format_double(r.bracket)
         << ',' << (r.mu_exact ? 1 : 0) << '\n';
    }
    os << "\nm,n,ratio\n";
    for (const auto& [mn, value] : table.ratios) os << mn.first << ',' << mn.second << ',' << format_double(value) << '\n';
  } else {
    json j = cmd.json_envelope();
    j["table"] = to_json(table);
    os << j.dump(2) << '\n';
  }
  return false;
}

bool sweep(const Command& cmd, std::ostream& os) {
  const std::vector<NamedGenerator> pool = default_generator_pool(cmd.spec(), cmd.mmax(), cmd.options().seed);
  std::vector<GeneratedBlockSpec> family;
  for (const auto& g : pool) family.push_back(g.block);
  WitnessOptions w;
  w.evaluations = cmd.budget();
  w.seed = cmd.options().seed;
  const SweepResult res = uniform_sweep(cmd.spec(), family, cmd.nmax(), w, cmd.options().threads);
  bool exhausted = false;
  for (const auto& e : res.estimates) exhausted = exhausted || e.exhausted;
  const std::string fam = family_name(cmd.spec().family());
  if (cmd.csv()) {
    cmd.csv_header(os);
    os << "family,m,N,K_lower,witness_up,witness_down,seed,generator,samples,exhausted\n";
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const EquivalenceEstimate& e = res.estimates[i];
      os << fam << ',' << pool[i].block.width() << ',' << cmd.nmax() << ',' << format_double(e.k_lower) << ','
         << format_vector(e.witness_up) << ',' << format_vector(e.witness_down) << ',' << e.seed << ','
         << pool[i].label << ',' << e.samples << ',' << (e.exhausted ? 1 : 0) << '\n';
    }
    os << "# K_sup " << format_double(res.k_sup) << " worst " << pool[res.worst].label
       << " (witness-certified lower bounds)\n";
  } else {
    json j = cmd.json_envelope();
    json rows = json::array();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      json r = to_json(res.estimates[i]);
      r["family"] = fam;
      r["m"] = pool[i].block.width();
      r["N"] = cmd.nmax();
      r["generator"] = pool[i].label;
      r["alpha"] = to_json(pool[i].block.alpha());
      rows.push_back(r);
    }
    j["estimates"] = rows;
    j["K_sup"] = res.k_sup;
    j["worst_generator"] = pool[res.worst].label;
    os << j.dump(2) << '\n';
  }
  return exhausted;
}

bool project(const Command& cmd, std::ostream& os) {
  const Options& o = cmd.options();
  if (!o.coeffs.empty() || !o.boundaries.empty()) {
    if (cmd.spec().family() != Family::Summing) throw ConfigError("--coeffs/--boundaries apply to the summing family");
    if (o.coeffs.empty() || o.boundaries.empty()) throw ConfigError("summing projection needs --coeffs and --boundaries");
    const CoeffVector a(parse_list<double>(o.coeffs, "--coeffs"));
    const std::vector<std::size_t> b = parse_list<std::size_t>(o.boundaries, "--boundaries");
    const CoeffVector pa = summing_projection(a, b);
    const double na = norm(cmd.spec(), a), npa = norm(cmd.spec(), pa);
    const double residual = norm(cmd.spec(), summing_projection(pa, b) - pa);
    if (cmd.csv()) {
      cmd.csv_header(os);
      os << "coeffs,projected,norm_x,norm_px,idempotency_residual\n";
      os << format_vector(a) << ',' << format_vector(pa) << ',' << format_double(na) << ',' << format_double(npa)
         << ',' << format_double(residual) << '\n';
    } else {
      json j = cmd.json_envelope();
      j["coeffs"] = to_json(a);
      j["projected"] = to_json(pa);
      j["norm_x"] = na;
      j["norm_px"] = npa;
      j["idempotency_residual"] = residual;
      os << j.dump(2) << '\n';
    }
    return false;
  }

  std::vector<NamedGenerator> pool;
  if (!o.alpha.empty()) {
    pool.push_back({"alpha", GeneratedBlockSpec::normalized(cmd.spec(), CoeffVector(parse_list<double>(o.alpha, "--alpha")))});
  } else {
    pool = default_generator_pool(cmd.spec(), cmd.mmax(), o.seed);
  }
  DualBudget dual;
  dual.seed = o.seed;
  dual.evaluations = 20000;
  WitnessOptions w;
  w.evaluations = cmd.budget();
  w.seed = o.seed;
  std::vector<NormingFunctional> betas(pool.size());
  std::vector<ProjectionReport> reports(pool.size());
  parallel_for(pool.size(), o.threads, [&](std::size_t i) {
    betas[i] = norming_functional(cmd.spec(), pool[i].block.alpha(), dual);
    reports[i] = projection_norm(cmd.spec(), pool[i].block, betas[i].beta, cmd.nmax(), w);
  });
  bool exhausted = false;
  for (const auto& r : reports) exhausted = exhausted || r.exhausted;
  if (cmd.csv()) {
    cmd.csv_header(os);
    os << "family,m,N,generator,beta,beta_certified,norm_lower,witness,idempotency_residual,samples,seed\n";
    for (std::size_t i = 0; i < pool.size(); ++i) {
      os << family_name(cmd.spec().family()) << ',' << pool[i].block.width() << ',' << cmd.nmax() << ','
         << pool[i].label << ',' << format_vector(betas[i].beta) << ',' << (betas[i].certified ? 1 : 0) << ','
         << format_double(reports[i].norm_lower) << ',' << format_vector(reports[i].witness) << ','
         << format_double(reports[i].idempotency_residual) << ',' << reports[i].samples << ',' << o.seed << '\n';
    }
  } else {
    json j = cmd.json_envelope();
    json rows = json::array();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      rows.push_back({{"generator", pool[i].label},
                      {"m", pool[i].block.width()},
                      {"alpha", to_json(pool[i].block.alpha())},
                      {"beta", to_json(betas[i].beta)},
                      {"beta_method", betas[i].method},
                      {"beta_certified", betas[i].certified},
                      {"norm_lower", reports[i].norm_lower},
                      {"witness", to_json(reports[i].witness)},
                      {"idempotency_residual", reports[i].idempotency_residual},
                      {"samples", reports[i].samples}});
    }
    j["projections"] = rows;
    os << j.dump(2) << '\n';
  }
  return exhausted;
}

bool dualcheck(const Command& cmd, std::ostream& os) {
  DualBudget dual;
  dual.evaluations = cmd.budget();
  dual.seed = cmd.options().seed;
  std::vector<CoeffVector> ys;
  std::vector<std::string> labels;
  if (!cmd.options().coeffs.empty()) {
    ys.emplace_back(parse_list<double>(cmd.options().coeffs, "--coeffs"));
    labels.push_back("y");
  } else {
    for (std::size_t n : dyadic_grid(cmd.nmax())) {
      ys.push_back(CoeffVector::ones(n));
      labels.push_back(std::to_string(n));
    }
    if (ys.empty()) throw ConfigError("--nmax must be >= 2");
  }
  std::vector<DualEvaluation> evals(ys.size());
  parallel_for(ys.size(), cmd.options().threads, [&](std::size_t i) { evals[i] = dual_norm(cmd.spec(), ys[i], dual); });
  bool exhausted = false;
  json rows = json::array();
  std::ostringstream body;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const DualEvaluation& d = evals[i];
    exhausted = exhausted || d.exhausted;
    const double wn = norm(cmd.spec(), d.witness);
    const double pair = pairing(d.witness, ys[i]);
    const bool flat = cmd.options().coeffs.empty();
    const double lam = flat ? lambda(cmd.spec(), ys[i].size()) : norm(cmd.spec(), ys[i]);
    const double bracket = lam * d.value / (flat ? static_cast<double>(ys[i].size()) : 1.0);
    body << labels[i] << ',' << format_double(lam) << ',' << format_double(d.value) << ',' << format_double(bracket)
         << ',' << (d.analytic ? "analytic" : "search-lower-bound") << ','
         << (d.gap ? format_double(*d.gap) : std::string("")) << ',' << format_double(wn) << ','
         << format_double(pair) << '\n';
    rows.push_back({{"n", labels[i]},
                    {"norm", lam},
                    {"dual", d.value},
                    {"bracket", bracket},
                    {"method", d.analytic ? "analytic" : "search-lower-bound"},
                    {"gap", d.gap ? json(*d.gap) : json(nullptr)},
                    {"witness", to_json(d.witness)},
                    {"witness_norm", wn},
                    {"witness_pairing", pair},
                    {"evaluations", d.evaluations}});
  }
  if (cmd.csv()) {
    cmd.csv_header(os);
    os << (cmd.options().coeffs.empty() ? "n,lambda,mu,bracket" : "y,norm,dual_norm,product")
       << ",method,gap,witness_norm,witness_pairing\n"
       << body.str();
  } else {
    json j = cmd.json_envelope();
    j["duals"] = rows;
    os << j.dump(2) << '\n';
  }
  return exhausted;
}

bool verdict(const Command& cmd, std::ostream& os) {
  ClassifyConfig c;
  c.n_max = cmd.nmax();
  c.m_max = cmd.mmax();
  c.evaluations = cmd.budget();
  c.seed = cmd.options().seed;
  c.threads = cmd.options().threads;
  if (cmd.spec().family() == Family::Tsirelson) {
    c.sweep_n = 4;
    c.dual.evaluations = 2000;
  }
  const Verdict v = classify(cmd.spec(), c);
  json j = cmd.json_envelope();
  j["space"] = to_json(cmd.spec());
  j["verdict"] = to_json(v);
  os << j.dump(2) << '\n';
  return v.worst.estimate.exhausted;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"seqlab: norms, duals, generated block bases and equivalence constants in sequence spaces"};
  app.require_subcommand(1);
  Options opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "growth table lambda(n), mu(n), duality bracket and submultiplicativity ratios"},
      {"sweep", "equivalence-constant lower bounds over the default generator pool"},
      {"project", "norming functionals and block-projection norms, or the summing-basis projection"},
      {"dualcheck", "dual norms with witnesses"},
      {"verdict", "classify the basis (JSON)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--space", opts.space_path, "space description JSON")->required();
    sub->add_option("--nmax", opts.nmax, "largest n (analyze, dualcheck, verdict) or truncation N (sweep, project)");
    sub->add_option("--mmax", opts.mmax, "largest generator width");
    sub->add_option("--budget", opts.budget, "search evaluations");
    sub->add_option("--seed", opts.seed, "64-bit seed");
    sub->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
    sub->add_option("--out", opts.out_path, "output file (default stdout)");
    sub->add_option("--format", opts.format, "csv or json");
    sub->add_flag("--strict", opts.strict, "exit 3 when a search exhausts its budget");
    if (name == "project") {
      sub->add_option("--alpha", opts.alpha, "generator coefficients, comma separated");
      sub->add_option("--coeffs", opts.coeffs, "summing-basis coefficients, comma separated");
      sub->add_option("--boundaries", opts.boundaries, "increasing 1-based boundaries, comma separated");
    }
    if (name == "dualcheck") sub->add_option("--coeffs", opts.coeffs, "dual coefficients, comma separated");
  }

  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const Command cmd(name, opts);
    std::ostringstream body;
    bool exhausted = false;
    if (name == "analyze") exhausted = analyze(cmd, body);
    if (name == "sweep") exhausted = sweep(cmd, body);
    if (name == "project") exhausted = project(cmd, body);
    if (name == "dualcheck") exhausted = dualcheck(cmd, body);
    if (name == "verdict") exhausted = verdict(cmd, body);
    if (opts.out_path.empty()) {
      out << body.str();
    } else {
      std::ofstream f(opts.out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + opts.out_path);
      f << body.str();
    }
    if (exhausted && opts.strict) {
      err << "error: a search exhausted its budget (--strict)\n";
      return kExitBudget;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
  }
  return kExitConfig;
}

}  // namespace seqlab::cli
