#include "cheb/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheb/combinat.hpp"
#include "cheb/conductor.hpp"
#include "cheb/error.hpp"
#include "cheb/frobgroup.hpp"
#include "cheb/limit_model.hpp"
#include "cheb/psi_moments.hpp"
#include "cheb/sampler.hpp"
#include "cheb/verification.hpp"

namespace cheb::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

// Everything that describes a run except wall time and worker count, which
// live in a separate one-line "runtime" entry so outputs stay comparable.
struct Manifest {
  std::string subcommand;
  json flags = json::object();
  json inputs = json::object();

  json to_json() const {
    json j;
    j["tool"] = "cheb";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["flags"] = flags;
    j["inputs"] = inputs;
    return j;
  }
};

struct Runtime {
  Clock::time_point start = Clock::now();
  unsigned workers = 1;

  json to_json() const {
    json j;
    j["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start).count();
    j["workers"] = workers;
    return j;
  }
};

// Body pretty-printed, manifest first, runtime appended as a single line.
std::string render_json(const Manifest& manifest, const json& body, const Runtime& rt) {
  json doc;
  doc["manifest"] = manifest.to_json();
  for (const auto& [k, v] : body.items()) doc[k] = v;
  std::string text = doc.dump(2);
  text.pop_back();  // closing brace
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
  text += ",\n  \"runtime\": " + rt.to_json().dump() + "\n}\n";
  return text;
}

std::string render_csv(const Manifest& manifest, const std::string& table, const Runtime& rt) {
  return "# manifest " + manifest.to_json().dump() + "\n" + table + "# runtime " + rt.to_json().dump() + "\n";
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::BadMagic:
    case ErrorCode::VersionMismatch:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::TruncatedFile:
      return kExitIo;
    default:
      return kExitBadFlags;
  }
}

std::string complex_text(std::complex<double> v) {
  const double re = std::fabs(v.real()) < 5e-13 ? 0.0 : v.real();
  const double im = std::fabs(v.imag()) < 5e-13 ? 0.0 : v.imag();
  std::ostringstream ss;
  ss << std::setprecision(6) << re;
  if (im != 0.0) ss << (im < 0 ? "-" : "+") << std::fabs(im) << "i";
  return ss.str();
}

// ---------------------------------------------------------------------------
// group

std::string group_text(const AffineGroup& g) {
  const auto& table = g.table();
  std::ostringstream ss;
  ss << "Aff(F_" << g.p() << "): order " << g.order() << ", d = " << g.d() << ", primitive root "
     << g.primitive_root() << "\n";
  ss << "classes (" << table.num_classes() << "):\n";
  for (const auto& cls : table.classes()) {
    ss << "  " << std::setw(3) << cls.id << "  size " << std::setw(5) << cls.size << "  rep x -> " << cls.multiplier
       << "x + " << cls.shift << "\n";
  }
  ss << "characters (" << table.characters().size() << "):\n";
  for (const auto& chi : table.characters()) {
    if (chi.kind == CharacterKind::Abelian) {
      ss << "  psi_" << chi.abelian_index;
    } else {
      ss << "  theta";
    }
    ss << "  degree " << chi.degree << ":";
    for (const auto& v : chi.values) ss << " " << complex_text(v);
    ss << "\n";
  }
  return ss.str();
}

json group_json(const AffineGroup& g) {
  const auto& table = g.table();
  json j;
  j["p"] = g.p();
  j["order"] = g.order();
  j["d"] = g.d();
  j["primitive_root"] = g.primitive_root();
  json classes = json::array();
  for (const auto& cls : table.classes()) {
    classes.push_back({{"id", cls.id}, {"size", cls.size}, {"representative", {cls.multiplier, cls.shift}}});
  }
  j["classes"] = classes;
  json chars = json::array();
  for (const auto& chi : table.characters()) {
    json values = json::array();
    for (const auto& v : chi.values) values.push_back({v.real(), v.imag()});
    json c;
    c["kind"] = chi.kind == CharacterKind::Abelian ? "abelian" : "theta";
    if (chi.kind == CharacterKind::Abelian) c["j"] = chi.abelian_index;
    c["degree"] = chi.degree;
    c["values"] = values;
    chars.push_back(c);
  }
  j["characters"] = chars;
  return j;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

CheckResult check_orthogonality() {
  double worst = 0.0;
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto g = AffineGroup::build(p);
    worst = std::max({worst, g.table().row_orthogonality_error(), g.table().column_orthogonality_error()});
  }
  return {"character orthogonality p<=13", worst <= 1e-10, "max error " + format_double(worst)};
}

CheckResult check_class_sums(unsigned trials) {
  std::mt19937_64 rng(20240611);
  std::size_t bad = 0, total = 0;
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto g = AffineGroup::build(p);
    const auto chars = g.table().characters();
    for (unsigned t = 0; t < trials; ++t) {
      const unsigned n = 1 + static_cast<unsigned>(rng() % 5);
      std::vector<Character> tuple;
      for (unsigned i = 0; i < n; ++i) tuple.push_back(chars[rng() % chars.size()]);
      const auto cs = class_sum(g.table(), tuple);
      ++total;
      const double closed = static_cast<double>(*cs.closed_form);
      if (std::abs(cs.brute_force - closed) > 1e-9 * std::max(1.0, std::fabs(closed))) ++bad;
    }
  }
  return {"generalized orthogonality closed form", bad == 0,
          std::to_string(total - bad) + "/" + std::to_string(total) + " tuples agree"};
}

CheckResult check_hs(unsigned s_max) {
  const auto seq = combinat::h_sequence(s_max);
  bool ok = true;
  for (unsigned s = 0; s <= s_max; ++s) ok = ok && seq[s] == combinat::h_formula(s);
  for (unsigned s = 0; s <= combinat::kBruteForceMaxS; ++s) {
    ok = ok && mpz_class(static_cast<unsigned long>(combinat::h_bruteforce(s))) == seq[s];
  }
  return {"H_s formula = recurrence = brute force", ok,
          "s <= " + std::to_string(s_max) + " (brute force s <= 8)"};
}

CheckResult check_sampler(std::uint64_t q_max) {
  std::size_t checked = 0, bad = 0;
  for (auto [a, p] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {2, 7}, {3, 5}}) {
    SieveConfig cfg{a, p, q_max};
    const auto ds = sieve(cfg);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      ++checked;
      if (oracle::factor_degrees_binomial(ds.primes[i], a, p) != oracle::expected_degrees(ds.classes[i], p)) ++bad;
    }
  }
  return {"Frobenius classes vs factorization of X^p - a", bad == 0,
          std::to_string(checked - bad) + "/" + std::to_string(checked) + " primes <= " + std::to_string(q_max)};
}

CheckResult check_moment_identity(std::uint64_t x_max, unsigned workers) {
  double worst = 0.0;
  for (auto [a, p] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {2, 7}}) {
    const auto ds = cached_dataset(SieveConfig{a, p, x_max}, workers);
    const MomentEngine engine(ds, ErrorTermConfig{});
    const double hi = std::min(engine.max_u(), 6.0);
    for (double u : {hi - 2.0, hi - 1.0, hi}) {
      for (unsigned n = 1; n <= 4; ++n) {
        const double direct = engine.moment_n(u, n);
        const double chars = engine.moment_n_chars(u, n);
        worst = std::max(worst, std::fabs(direct - chars) / std::max(std::fabs(direct), 1e-300));
      }
    }
  }
  return {"moment_n = character expansion", worst <= 1e-8, "max relative difference " + format_double(worst)};
}

CheckResult check_conductors() {
  const auto prof = conductor_profile(2, 3);
  bool ok = prof.A_theta == 108 && prof.d_L == 34992;
  ok = ok && oracle::abs_discriminant({mpz_class(-2), 0, 0, 1}) == prof.A_theta;
  std::size_t pairs = 0;
  for (std::uint64_t p = 3; p <= 50; ++p) {
    for (std::uint64_t a = 2; a <= 50; ++a) {
      if (!is_admissible(a, p)) continue;
      ++pairs;
      const auto pr = conductor_profile(a, p);
      ok = ok && pr.rd_bound_ok && check_lemma_3_7(pr);
      if (p >= 5) ok = ok && check_lemma_2_1(pr).pass;
    }
  }
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto g = AffineGroup::build(p);
    ok = ok && s_t(g.table(), ClassFunction::of(*g.table().theta())) == 1.0 / static_cast<double>(g.d());
  }
  return {"conductor values and bounds", ok, std::to_string(pairs) + " admissible pairs with a, p <= 50"};
}

CheckResult check_limit_model(std::uint64_t samples) {
  limit::LimitModelConfig cfg;
  cfg.n_samples = samples;
  double worst = 0.0;
  for (const auto& est : limit::mc_centered_moments(cfg, 4)) worst = std::max(worst, est.z_score());
  for (auto [d, m] : {std::pair<std::uint64_t, unsigned>{2, 1}, {2, 2}, {6, 2}}) {
    cfg.d = d;
    worst = std::max(worst, limit::mc_frobenius_moment(cfg, m).z_score());
  }
  return {"limit model vs H_s and Frobenius coefficients", worst <= 4.0, "max |z| " + format_double(worst)};
}

int run_verify(bool quick, unsigned workers, std::ostream& out) {
  std::vector<std::function<CheckResult()>> checks = {
      [] { return check_orthogonality(); },
      [&] { return check_class_sums(quick ? 20 : 100); },
      [&] { return check_hs(quick ? 60 : 200); },
      [&] { return check_sampler(quick ? 2000 : 10000); },
      [&] { return check_moment_identity(quick ? 200000 : 1000000, workers); },
      [] { return check_conductors(); },
      [&] { return check_limit_model(quick ? 100000 : 1000000); },
  };
  bool all = true;
  for (const auto& check : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    all = all && r.pass;
    out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
  }
  out << (all ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

// ---------------------------------------------------------------------------

FrobeniusDataset cached_dataset(const SieveConfig& config, unsigned workers) {
  const char* dir = std::getenv("CHEB_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return sieve(config, workers);
  const std::filesystem::path path = std::filesystem::path(dir) / ("chebset_a" + std::to_string(config.a) + "_p" +
                                                                   std::to_string(config.p) + "_x" +
                                                                   std::to_string(config.x_max) + ".txt");
  if (std::filesystem::exists(path)) {
    try {
      auto ds = load(path);
      if (ds.config.same_field_and_range(config)) return ds;
    } catch (const Error&) {
      // Unreadable cache entries are rebuilt below.
    }
  }
  auto ds = sieve(config, workers);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  store(ds, path);
  return ds;
}

std::optional<std::string> check_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "empty file";
  if (text.compare(0, 8, "CHEBSET ") == 0) {
    try {
      parse_dataset(text);
      return std::nullopt;
    } catch (const Error& e) {
      return std::string(e.what());
    }
  }
  if (text[first] == '{' || text[first] == '[') {
    try {
      const auto j = json::parse(text);
      if (j.is_object() && !j.contains("manifest")) return "JSON report lacks a manifest";
      return std::nullopt;
    } catch (const json::exception& e) {
      return std::string("invalid JSON: ") + e.what();
    }
  }
  // CSV: '#' comment lines, a header, then rows of numbers with the same width.
  std::istringstream in(text);
  std::string line;
  std::size_t columns = 0, rows = 0;
  bool manifest = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# manifest ", 0) == 0) {
        if (!json::accept(line.substr(11))) return "manifest line is not valid JSON";
        manifest = true;
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (columns == 0) {
      columns = cells.size();
      continue;
    }
    if (cells.size() != columns) return "row " + std::to_string(rows + 1) + " has the wrong number of columns";
    for (const auto& c : cells) {
      char* end = nullptr;
      std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') return "non-numeric cell '" + c + "'";
    }
    ++rows;
  }
  if (columns == 0) return "no CSV header";
  if (!manifest) return "CSV lacks a manifest line";
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebotarev moment laboratory for Q(a^(1/p), zeta_p)/Q", "cheb"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  unsigned workers = 1;
  std::string check_path;
  app.add_option("--workers", workers, "Worker threads for parallel stages (outputs do not depend on it)")
      ->default_val(1)
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--check", check_path, "Validate a JSON, CSV or dataset file written by this tool");

  // group
  auto* group_cmd = app.add_subcommand("group", "Print the conjugacy classes and character table of Aff(F_p)");
  std::uint64_t group_p = 5;
  std::string group_format = "text", group_out;
  group_cmd->add_option("--p", group_p, "Odd prime p")->required();
  group_cmd->add_option("--format", group_format, "text or json")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  group_cmd->add_option("--out", group_out, "Output file (default stdout)");

  // hs
  auto* hs_cmd = app.add_subcommand("hs", "Tabulate s, mu_{2s}, H_s and H_s/mu_{2s}");
  unsigned hs_max = 10;
  std::string hs_format = "csv", hs_out;
  hs_cmd->add_option("--max-s", hs_max, "Largest s")->default_val(10)->check(CLI::Range(0u, 5000u));
  hs_cmd->add_option("--format", hs_format, "csv or json")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
  hs_cmd->add_option("--out", hs_out, "Output file (default stdout)");

  // sieve
  auto* sieve_cmd = app.add_subcommand("sieve", "Sieve primes and record their Frobenius classes");
  SieveConfig sieve_cfg;
  std::string sieve_out;
  sieve_cmd->add_option("--a", sieve_cfg.a, "Prime a")->required();
  sieve_cmd->add_option("--p", sieve_cfg.p, "Odd prime p")->required();
  sieve_cmd->add_option("--xmax", sieve_cfg.x_max, "Sieve bound")->required();
  sieve_cmd->add_option("--segment", sieve_cfg.segment_size, "Segment size in integers")->default_val(1u << 20);
  sieve_cmd->add_option("--out", sieve_out, "Dataset file")->required();

  // moments
  auto* moments_cmd = app.add_subcommand("moments", "Compute M_n(u), V_{2,s}, M_{n,1} from a dataset");
  std::string dataset_path, moments_out;
  double U = 12.0, shape_a = 1.0, width_b = 1.0, step = 0.05, tol = 1e-12;
  std::vector<unsigned> ns{2, 4}, ss{2, 3};
  std::vector<double> z_values;
  moments_cmd->add_option("--dataset", dataset_path, "Dataset file from `sieve`")->required();
  moments_cmd->add_option("--U", U, "Averaging scale U")->default_val(12.0);
  moments_cmd->add_option("--n", ns, "Moment orders n")->delimiter(',')->default_str("2,4");
  moments_cmd->add_option("--s", ss, "Centered variance moments s")->delimiter(',')->default_str("2,3");
  moments_cmd->add_option("--a", shape_a, "Weight shape: eta(t) = exp(-a t^2)")->default_val(1.0);
  moments_cmd->add_option("--b", width_b, "Kernel width: Phi(u) = exp(-b u^2)")->default_val(1.0);
  moments_cmd->add_option("--step", step, "u-grid step")->default_val(0.05);
  moments_cmd->add_option("--tol", tol, "Truncation tolerance")->default_val(1e-12);
  moments_cmd->add_option("--z", z_values, "ord_{s=1/2} L(s, chi) per character (default all 0)")->delimiter(',');
  moments_cmd->add_option("--out", moments_out, "Report file (default stdout)");

  // limit-mc
  auto* mc_cmd = app.add_subcommand("limit-mc", "Monte-Carlo model of the limiting moments");
  std::uint64_t mc_d = 6, mc_seed = 42;
  unsigned mc_m = 2, mc_smax = 5;
  double mc_samples = 1e6, mc_v = 1.0;
  bool mc_abelian = false;
  std::string mc_out;
  mc_cmd->add_option("--d", mc_d, "Complement order d")->default_val(6);
  mc_cmd->add_option("--m", mc_m, "Frobenius moment index m (order 2m)")->default_val(2)->check(CLI::Range(1u, 4u));
  mc_cmd->add_option("--samples", mc_samples, "Number of samples")->default_val(1e6);
  mc_cmd->add_option("--seed", mc_seed, "Seed")->default_val(42);
  mc_cmd->add_option("--v", mc_v, "Variance scale")->default_val(1.0);
  mc_cmd->add_option("--s-max", mc_smax, "Largest centered moment s")->default_val(5)->check(CLI::Range(1u, 8u));
  mc_cmd->add_flag("--abelian-noise", mc_abelian, "Add d-1 unit-variance abelian terms (exploratory)");
  mc_cmd->add_option("--out", mc_out, "Report file (default stdout)");

  // conductor
  auto* cond_cmd = app.add_subcommand("conductor", "Artin conductor, discriminant and bound checks");
  std::uint64_t cond_a = 2, cond_p = 3;
  std::string cond_out;
  cond_cmd->add_option("--a", cond_a, "Prime a")->required();
  cond_cmd->add_option("--p", cond_p, "Odd prime p")->required();
  cond_cmd->add_option("--out", cond_out, "Report file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  bool quick = false;
  verify_cmd->add_flag("--quick", quick, "Smaller ranges");

  std::vector<std::string> argv_store;
  argv_store.emplace_back("cheb");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadFlags;
  }

  Runtime rt;
  rt.workers = workers;

  try {
    if (!check_path.empty()) {
      const auto problem = check_file(check_path);
      if (problem) {
        err << "check: " << check_path << ": " << *problem << "\n";
        return kExitVerifyFailed;
      }
      out << "check: " << check_path << ": ok\n";
      return kExitOk;
    }

    if (*group_cmd) {
      const auto g = AffineGroup::build(group_p);
      Manifest m{"group"};
      m.flags = {{"p", group_p}, {"format", group_format}};
      if (group_format == "json") {
        emit(render_json(m, json{{"group", group_json(g)}}, rt), group_out, out);
      } else {
        emit(group_text(g), group_out, out);
      }
      return kExitOk;
    }

    if (*hs_cmd) {
      Manifest m{"hs"};
      m.flags = {{"max_s", hs_max}, {"format", hs_format}};
      const auto h = combinat::h_sequence(hs_max);
      if (hs_format == "csv") {
        std::string table = "s,mu2s,Hs,ratio\n";
        for (unsigned s = 0; s <= hs_max; ++s) {
          table += std::to_string(s) + "," + combinat::mu(2 * s).get_str() + "," + h[s].get_str() + "," +
                   format_double(s == 0 ? 1.0 : combinat::h_asymptotic_ratio(s)) + "\n";
        }
        emit(render_csv(m, table, rt), hs_out, out);
      } else {
        json rows = json::array();
        for (unsigned s = 0; s <= hs_max; ++s) {
          rows.push_back({{"s", s},
                          {"mu2s", combinat::mu(2 * s).get_str()},
                          {"Hs", h[s].get_str()},
                          {"ratio", s == 0 ? 1.0 : combinat::h_asymptotic_ratio(s)}});
        }
        emit(render_json(m, json{{"rows", rows}}, rt), hs_out, out);
      }
      return kExitOk;
    }

    if (*sieve_cmd) {
      const auto ds = cached_dataset(sieve_cfg, workers);
      store(ds, sieve_out);
      out << "sieve: " << ds.size() << " unramified primes <= " << ds.config.x_max << " written to " << sieve_out
          << "\n";
      return kExitOk;
    }

    if (*moments_cmd) {
      const std::string bytes = read_file(dataset_path);
      const auto ds = parse_dataset(bytes);
      ErrorTermConfig ecfg{GaussianWeight(shape_a), z_values, tol};
      const MomentEngine engine(ds, ecfg);
      MomentRequest req;
      req.averaging = AveragingConfig{U, GaussianKernel(width_b), step, workers};
      req.ns = ns;
      req.ss = ss;
      const auto report = moment_report(engine, req);

      Manifest m{"moments"};
      m.flags = {{"dataset", dataset_path}, {"U", U},        {"n", ns},     {"s", ss},
                 {"a", shape_a},            {"b", width_b},  {"step", step}, {"tol", tol},
                 {"z", z_values}};
      m.inputs[dataset_path] = hex32(crc32_of(bytes));

      json body;
      body["config"] = {{"field_a", ds.config.a},
                        {"field_p", ds.config.p},
                        {"x_max", ds.config.x_max},
                        {"weight_a", shape_a},
                        {"kernel_b", width_b},
                        {"U", U},
                        {"step", step},
                        {"tol", tol},
                        {"window_W", engine.window()},
                        {"u_end", report.window.u_end},
                        {"m2_upper", report.m2_upper}};
      body["u_grid"] = report.u_grid;
      json M = json::object();
      for (const auto& [n, series] : report.M) M[std::to_string(n)] = series;
      body["M"] = M;
      body["m2"] = report.m2;
      json V = json::object();
      for (const auto& [s, v] : report.V) V[std::to_string(s)] = v;
      body["V"] = V;
      json M1 = json::object();
      for (const auto& [n, v] : report.M1) M1[std::to_string(n)] = v;
      body["M1"] = M1;
      json ratios = json::object();
      for (const auto& [n, v] : report.ratios) ratios[std::to_string(n)] = v;
      body["ratios"] = ratios;
      body["flags"] = {{"window_below_range", report.window_below_range},
                       {"averaging_clamped_by_sieve_depth", report.window.clamped_by_sieve_depth},
                       {"m2_window_clamped", report.m2_clamped}};
      emit(render_json(m, body, rt), moments_out, out);
      return kExitOk;
    }

    if (*mc_cmd) {
      limit::LimitModelConfig cfg;
      cfg.d = mc_d;
      cfg.v = mc_v;
      cfg.n_samples = static_cast<std::uint64_t>(std::llround(mc_samples));
      cfg.seed = mc_seed;
      cfg.workers = workers;
      cfg.abelian_noise = mc_abelian;
      const auto centered = limit::mc_centered_moments(cfg, mc_smax);
      const auto frob = limit::mc_frobenius_moment(cfg, mc_m);

      Manifest m{"limit-mc"};
      m.flags = {{"d", mc_d},   {"m", mc_m},         {"samples", cfg.n_samples},   {"seed", mc_seed},
                 {"v", mc_v},   {"s_max", mc_smax},  {"abelian_noise", mc_abelian}};
      json rows = json::array();
      for (std::size_t i = 0; i < centered.size(); ++i) {
        rows.push_back({{"s", i + 1},
                        {"mean", centered[i].mean},
                        {"std_error", centered[i].std_error},
                        {"H_s", centered[i].target},
                        {"z", centered[i].z_score()}});
      }
      json body;
      body["centered"] = rows;
      json fj = {{"d", mc_d}, {"m", mc_m}, {"mean", frob.mean}, {"std_error", frob.std_error}};
      if (!mc_abelian) {
        fj["target"] = frob.target;
        fj["exact_coefficient"] = limit::frobenius_coefficient(mc_d, mc_m).get_str();
        fj["z"] = frob.z_score();
      }
      body["frobenius"] = fj;
      emit(render_json(m, body, rt), mc_out, out);
      return kExitOk;
    }

    if (*cond_cmd) {
      const auto prof = conductor_profile(cond_a, cond_p);
      Manifest m{"conductor"};
      m.flags = {{"a", cond_a}, {"p", cond_p}};
      json body;
      body["a"] = cond_a;
      body["p"] = cond_p;
      body["A_theta"] = prof.A_theta.get_str();
      body["d_L"] = prof.d_L.get_str();
      body["rd_L"] = prof.rd_L;
      body["log_A_theta"] = prof.log_A_theta;
      body["log_rd_L"] = prof.log_rd_L;
      body["rd_bound_ok"] = prof.rd_bound_ok;
      if (cond_p >= 5) {
        const auto br = check_lemma_2_1(prof);
        body["lemma21_bracket"] = {{"lower", br.lower}, {"value", br.value}, {"upper", br.upper}, {"pass", br.pass}};
      } else {
        body["lemma21_bracket"] = nullptr;
      }
      body["lemma37_ok"] = check_lemma_3_7(prof);
      emit(render_json(m, body, rt), cond_out, out);
      return kExitOk;
    }

    if (*verify_cmd) return run_verify(quick, workers, out);

    out << app.help();
    return kExitOk;
  } catch (const Error& e) {
    err << "cheb: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace cheb::cli
