#include "syncwalk/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "syncwalk/chain.hpp"
#include "syncwalk/coloring.hpp"
#include "syncwalk/entropy.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/json_io.hpp"
#include "syncwalk/law.hpp"
#include "syncwalk/sampler.hpp"
#include "syncwalk/stats.hpp"

namespace syncwalk::cli {

namespace {

using io::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string config_line(const json& config) {
  std::string line = "config:";
  for (auto it = config.begin(); it != config.end(); ++it) {
    line += " " + it.key() + "=";
    if (it->is_string())
      line += it->get<std::string>();
    else
      line += it->dump();
  }
  return line;
}

struct RealizeArgs {
  std::string input;
  std::uint64_t seed = 0;
  long long maxden = 1'000'000;
  long long search_budget = 5'000'000;
  std::string site = "smallest";
  std::string out = "realized_law.json";
  std::string out_coloring = "realized_coloring.json";
};

int cmd_realize(const RealizeArgs& a, std::ostream& out) {
  const json config{{"command", "realize"},      {"input", a.input},
                    {"seed", a.seed},            {"maxden", a.maxden},
                    {"search_budget", a.search_budget}, {"site", a.site},
                    {"out", a.out},              {"out_coloring", a.out_coloring}};
  out << config_line(config) << "\n";

  const StochasticMatrix q = io::matrix_from_json(io::read_json_file(a.input), a.maxden);
  const auto cls = classify(q);
  out << "chain: m=" << q.size() << " class=" << chain_class_name(cls.kind);
  if (cls.kind == ChainClass::Mixing) out << " positive-power=" << cls.positive_power;
  out << "\n";

  SynthesisOptions opts;
  opts.pref = a.site == "weight" ? SitePreference::HighestProbability : SitePreference::SmallestIndex;
  opts.search.seed = a.seed;
  opts.search.budget = a.search_budget;
  const SynthesisResult res = synchronizing_mapping_law(q, opts);

  const bool ok = verify_mapping_law(res.law, q);
  const bool sync = is_synchronizing(res.law.support());
  const auto word_image = image_set(res.certificate.composed());

  out << "support graph: d=" << res.coloring.out_degree() << "\n";
  out << "epsilon: " << rat_to_string(res.epsilon) << "\n";
  out << "certificate: length=" << res.certificate.length() << " image={";
  for (size_t i = 0; i < word_image.size(); ++i) out << (i ? "," : "") << word_image[i] + 1;
  out << "}\n";
  out << "law: atoms=" << res.law.atoms().size() << " verified=" << (ok ? "yes" : "no")
      << " synchronizing=" << (sync ? "yes" : "no") << "\n";
  if (!ok || !sync) throw std::logic_error("realized law failed its own checks");

  json law_file = io::law_to_json(res.law);
  law_file["epsilon"] = rat_to_string(res.epsilon);
  law_file["config"] = config;
  io::write_json_file(a.out, law_file);

  json coloring_file = io::coloring_to_json(res.coloring, res.certificate);
  coloring_file["config"] = config;
  io::write_json_file(a.out_coloring, coloring_file);

  out << "wrote: " << a.out << " " << a.out_coloring << "\n";
  return 0;
}

struct SampleArgs {
  std::string input;
  std::uint64_t seed = 0;
  long long samples = 10'000;
  long long depth_cap = 1'000'000;
  std::string out;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const json config{{"command", "sample"},
                    {"input", a.input},
                    {"seed", a.seed},
                    {"samples", a.samples},
                    {"depth_cap", a.depth_cap},
                    {"out", a.out.empty() ? json() : json(a.out)}};
  out << config_line(config) << "\n";

  const MappingLaw mu = io::law_from_json(io::read_json_file(a.input));
  if (a.samples < 1) throw PreconditionError("need at least one sample");

  const StochasticMatrix q = mu.induced_matrix();
  const auto lambda_opt = solve_stationary(q);
  if (!lambda_opt) throw PreconditionError("no unique stationary law");
  const Distribution& lambda = *lambda_opt;

  CftpOptions opts;
  opts.depth_cap = a.depth_cap;
  const CoalescenceStats stats = coalescence_stats(mu, a.samples, a.seed, opts);
  const double tv = tv_distance_counts(stats.value_counts, lambda);

  out << "law: m=" << mu.state_count() << " atoms=" << mu.atoms().size() << "\n";
  out << "stationary:";
  for (int x = 0; x < lambda.size(); ++x) out << " " << rat_to_string(lambda.p(x));
  out << "\n";
  out << "empirical:";
  for (long long c : stats.value_counts) out << " " << c;
  out << "\n";
  out << "tv-distance: " << fmt_double(tv) << "\n";
  out << "depth: mean=" << fmt_double(stats.mean_depth) << " p50=" << stats.depth_p50
      << " p90=" << stats.depth_p90 << " p99=" << stats.depth_p99 << " max=" << stats.max_depth
      << "\n";

  if (!a.out.empty()) {
    json empirical = json::object();
    json stationary_j = json::object();
    for (int x = 0; x < lambda.size(); ++x) {
      const std::string key = std::to_string(x + 1);
      empirical[key] = stats.value_counts[static_cast<size_t>(x)];
      stationary_j[key] = rat_to_string(lambda.p(x));
    }
    const json report{{"samples", a.samples},
                      {"empirical", std::move(empirical)},
                      {"stationary", std::move(stationary_j)},
                      {"tv_distance", tv},
                      {"mean_depth", stats.mean_depth},
                      {"seed", a.seed},
                      {"config", config}};
    io::write_json_file(a.out, report);
    out << "wrote: " << a.out << "\n";
  }
  return 0;
}

struct EntropyArgs {
  std::string input;
  std::string law_file;
  long long family_n = 0;  // 0 = not requested
  std::uint64_t seed = 0;
  long long maxden = 1'000'000;
  long long search_budget = 5'000'000;
  std::string out;
  std::string out_law;
};

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  const json config{{"command", "entropy"},
                    {"input", a.input},
                    {"law", a.law_file.empty() ? json() : json(a.law_file)},
                    {"family_n", a.family_n == 0 ? json() : json(a.family_n)},
                    {"seed", a.seed},
                    {"maxden", a.maxden},
                    {"search_budget", a.search_budget},
                    {"out", a.out.empty() ? json() : json(a.out)},
                    {"out_law", a.out_law.empty() ? json() : json(a.out_law)}};
  out << config_line(config) << "\n";

  const StochasticMatrix q = io::matrix_from_json(io::read_json_file(a.input), a.maxden);
  const auto cls = classify(q);
  out << "chain: m=" << q.size() << " class=" << chain_class_name(cls.kind) << "\n";

  const double h_chain = chain_entropy(q);  // stationary() rejects reducible chains
  out << "hY: " << fmt_double(h_chain) << "\n";

  const auto pu = is_p_uniform(q);
  out << "p-uniform: " << (pu.p_uniform ? "true" : "false") << "\n";

  ColoringSearchOptions search;
  search.seed = a.seed;
  search.budget = a.search_budget;

  json n_min_j;
  std::optional<EntropyFamilyResult> family;
  if (pu.p_uniform && cls.kind == ChainClass::Mixing) {
    // n_min falls out of the family construction; probe with a huge n.
    EntropyFamilyResult probe = entropy_family(q, 1'000'000'000'000LL, search);
    n_min_j = probe.n_min;
    out << "n-min: " << probe.n_min << "\n";

    out << "family gaps:" << "\n";
    for (long long n : {10LL, 100LL, 1'000LL, 10'000LL}) {
      if (n < probe.n_min) continue;
      const EntropyFamilyResult r = entropy_family(q, n, search);
      out << "  n=" << n << " hN=" << fmt_double(r.law_entropy) << " gap=" << fmt_double(r.gap)
          << "\n";
    }
    if (a.family_n > 0) family = entropy_family(q, a.family_n, search);
  } else if (a.family_n > 0) {
    // Surface the module's own error message.
    family = entropy_family(q, a.family_n, search);
  }

  // Two-state symmetric chains get the epsilon table of the explicit family.
  if (q.size() == 2 && pu.p_uniform && q.q(0, 0) == q.q(1, 1) && q.q(0, 0) > 0 && q.q(0, 0) < 1) {
    const Rat p = q.q(0, 0);
    const Rat cap = std::min(p, Rat(1) - p);
    out << "epsilon gaps:" << "\n";
    for (const Rat& eps : {Rat(3, 10), Rat(1, 10), Rat(1, 100), Rat(1, 1000), Rat(1, 10000)}) {
      if (eps > cap) continue;
      const auto r = two_state_family(p, eps);
      out << "  eps=" << rat_to_string(eps) << " hN=" << fmt_double(r.law_entropy)
          << " gap=" << fmt_double(r.gap) << "\n";
    }
  }

  json hn_j, gap_j;
  if (!a.law_file.empty()) {
    const MappingLaw mu = io::law_from_json(io::read_json_file(a.law_file));
    if (!verify_mapping_law(mu, q))
      throw PreconditionError("law file does not realize the input matrix");
    const double hn = law_entropy(mu);
    hn_j = hn;
    gap_j = hn - h_chain;
    out << "law: hN=" << fmt_double(hn) << " gap=" << fmt_double(hn - h_chain) << "\n";
  } else if (family) {
    hn_j = family->law_entropy;
    gap_j = family->gap;
    out << "family law: n=" << family->n << " hN=" << fmt_double(family->law_entropy)
        << " gap=" << fmt_double(family->gap) << "\n";
  }

  if (family && !a.out_law.empty()) {
    json law_file = io::law_to_json(family->law);
    law_file["config"] = config;
    io::write_json_file(a.out_law, law_file);
    out << "wrote: " << a.out_law << "\n";
  }

  if (!a.out.empty()) {
    const json report{{"hY", h_chain}, {"hN", hn_j},          {"gap", gap_j},
                      {"p_uniform", pu.p_uniform}, {"n_min", n_min_j}, {"config", config}};
    io::write_json_file(a.out, report);
    out << "wrote: " << a.out << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string law_file;
  std::string matrix_file;
  long long maxden = 1'000'000;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const json config{{"command", "verify"},
                    {"law", a.law_file},
                    {"matrix", a.matrix_file},
                    {"maxden", a.maxden}};
  out << config_line(config) << "\n";

  const MappingLaw mu = io::law_from_json(io::read_json_file(a.law_file));
  const StochasticMatrix q = io::matrix_from_json(io::read_json_file(a.matrix_file), a.maxden);
  out << "support synchronizing: " << (is_synchronizing(mu.support()) ? "true" : "false") << "\n";

  if (verify_mapping_law(mu, q)) {
    out << "verdict: PASS (law reproduces the matrix exactly)\n";
    return 0;
  }
  if (mu.state_count() != q.size()) {
    out << "verdict: FAIL (law is on " << mu.state_count() << " states, matrix on " << q.size()
        << ")\n";
  } else {
    const StochasticMatrix got = mu.induced_matrix();
    for (int x = 0; x < q.size(); ++x)
      for (int y = 0; y < q.size(); ++y)
        if (got.q(x, y) != q.q(x, y)) {
          out << "verdict: FAIL (entry " << x + 1 << "->" << y + 1 << ": law gives "
              << rat_to_string(got.q(x, y)) << ", matrix has " << rat_to_string(q.q(x, y))
              << ")\n";
          return 2;
        }
  }
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact realization of mixing chains as IID random-map walks"};
  app.name("syncwalk");
  app.require_subcommand(1);

  RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "build a mapping law with synchronizing support");
  realize->add_option("matrix", ra.input, "transition matrix JSON file")->required();
  realize->add_option("--seed", ra.seed, "random seed");
  realize->add_option("--maxden", ra.maxden, "denominator bound for float inputs");
  realize->add_option("--search-budget", ra.search_budget, "coloring candidates to test");
  realize->add_option("--site", ra.site, "extra-weight edge rule: smallest|weight")
      ->check(CLI::IsMember({"smallest", "weight"}));
  realize->add_option("--out", ra.out, "law output path");
  realize->add_option("--out-coloring", ra.out_coloring, "coloring output path");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "draw exact stationary samples by CFTP");
  sample->add_option("law", sa.input, "mapping law JSON file")->required();
  sample->add_option("--seed", sa.seed, "random seed");
  sample->add_option("--samples", sa.samples, "number of CFTP samples");
  sample->add_option("--depth-cap", sa.depth_cap, "coalescence depth cap");
  sample->add_option("--out", sa.out, "report output path");

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "entropy rate and driving-noise entropies");
  entropy->add_option("matrix", ea.input, "transition matrix JSON file")->required();
  entropy->add_option("--law", ea.law_file, "law file to score against the matrix");
  entropy->add_option("--family-n", ea.family_n, "emit the explicit family law at this n");
  entropy->add_option("--seed", ea.seed, "random seed");
  entropy->add_option("--maxden", ea.maxden, "denominator bound for float inputs");
  entropy->add_option("--search-budget", ea.search_budget, "coloring candidates to test");
  entropy->add_option("--out", ea.out, "report output path");
  entropy->add_option("--out-law", ea.out_law, "family law output path");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a law against a matrix");
  verify->add_option("law", va.law_file, "mapping law JSON file")->required();
  verify->add_option("matrix", va.matrix_file, "transition matrix JSON file")->required();
  verify->add_option("--maxden", va.maxden, "denominator bound for float inputs");

  std::vector<const char*> argv;
  argv.push_back("syncwalk");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print through CLI11's own machinery
      return app.exit(e, out, err);
    }
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*realize) return cmd_realize(ra, out);
    if (*sample) return cmd_sample(sa, out);
    if (*entropy) return cmd_entropy(ea, out);
    if (*verify) return cmd_verify(va, out);
    err << "error: no command\n";
    return 1;
  } catch (const FormatError& e) {
    err << "error (parse): " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    err << "error (budget): " << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "error (precondition): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << "\n";
    return 4;
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace syncwalk::cli
