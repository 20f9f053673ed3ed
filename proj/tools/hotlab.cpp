// hotlab: command-line front end for the hot library.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage, 3 domain error, 4 budget.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hot/hot.hpp"

namespace {

using namespace hot;

constexpr std::uint64_t default_seed = 20240601;

enum Exit { ok = 0, verify_failed = 1, usage = 2, domain = 3, budget = 4 };

struct Output {
  bool json = false;
  std::string csv;
  unsigned threads = 1;

  void emit(Report& r) const {
    if (json)
      std::cout << r.to_json().dump() << std::endl;
    else
      r.print_table(std::cout);
    if (!csv.empty()) r.append_csv(csv);
  }
};

Sign parse_sign(int v) {
  if (v == 1) return Sign::plus;
  if (v == -1) return Sign::minus;
  throw argument_error("sign must be +1 or -1");
}

void census_fields(Report& r, const Census& c) {
  r.count("directed_count", c.directed).count("total_simplices", c.total).fraction("fraction", c.fraction());
}

// ---- gen -----------------------------------------------------------------------

struct GenArgs {
  std::uint32_t d = 2, n = 0, m = 1;
  std::uint64_t seed = default_seed;
  int base_sign = 1, tie_sign = 1;
  std::string out;
};

int finish_gen(const Output& o, Report& r, const Tournament& t, const std::string& out) {
  hot1::write_file(out, t);
  r.shape(t.d(), t.n()).count("sign_bits", t.num_signs()).text("out", out);
  o.emit(r);
  return ok;
}

// ---- verify suites -----------------------------------------------------------

struct VerifyArgs {
  std::string file, suite;
  std::uint32_t d = 3, n = 8, trials = 20;
  std::uint64_t seed = default_seed;
};

// Returns "" on success or a description of the first counterexample.
using SuiteFn = std::function<std::string(const VerifyArgs&, Report&, const Output&)>;

std::string suite_lemma_min(const VerifyArgs& a, Report& r, const Output&) {
  const std::uint64_t got = lemma_min_pairs_exhaustive(a.d);
  r.shape(a.d, 0).count("minimum_pairs", got).count("s_d", s_of_d(a.d));
  if (got != s_of_d(a.d)) return "exhaustive minimum " + std::to_string(got) + " != s(d)";
  return {};
}

std::string suite_thm2(const VerifyArgs& a, Report& r, const Output& o) {
  r.shape(3, a.n).seed(a.seed);
  if (a.n < 4) throw argument_error("thm2 suite needs n >= 4");
  const Tournament t2 = random_tournament(2, a.n, Seed{a.seed});
  const Census c = count_directed(minority_induce_3(t2), {o.threads});
  std::uint64_t types = 0;
  std::vector<Vertex> s{0, 1, 2, 3};
  do {
    types += classify_4set(t2, KSubset(s)) != FourSetType::Other;
  } while (next_colex(s, a.n));
  census_fields(r, c);
  r.count("type_i_or_ii", types);
  if (c.directed != types)
    return "directed count " + c.directed.str() + " != type I/II count " + std::to_string(types);
  return {};
}

std::string check_tournament_identities(const Tournament& t, Report& r, const Output& o) {
  const CountOptions opt{o.threads};
  const CompatiblePairTotals totals = compatible_pair_totals(t, opt);
  const Census c = count_directed(t, opt);
  census_fields(r, c);
  r.count("pairs_by_shared_face", totals.by_shared_face).count("pairs_by_simplex", totals.by_simplex);
  if (totals.by_shared_face != totals.by_simplex) return "double counting identity fails";
  const BigInt lower = compatible_pairs_lower(t.d(), t.n(), c.directed);
  const BigInt upper = compatible_pairs_upper(t.d(), t.n());
  if (lower > totals.by_simplex) return "lower display exceeds the pair total";
  if (totals.by_simplex > upper) return "pair total exceeds the upper display";
  if (t.n() > t.d() && c.directed > exact_upper_bound(t.d(), t.n())) return "census exceeds exact_upper_bound";
  return {};
}

std::string suite_double_count(const VerifyArgs& a, Report& r, const Output& o) {
  r.shape(a.d, a.n).seed(a.seed).count("trials", a.trials);
  for (std::uint32_t i = 0; i < a.trials; ++i) {
    const Tournament t = random_tournament(a.d, a.n, Seed{a.seed + i});
    Report scratch("scratch");
    const std::string bad = check_tournament_identities(t, scratch, o);
    if (!bad.empty()) return bad + " (seed " + std::to_string(a.seed + i) + ")";
  }
  return {};
}

std::string suite_geometry(const VerifyArgs& a, Report& r, const Output& o) {
  r.shape(a.d, a.n).seed(a.seed).count("trials", a.trials);
  std::uint64_t inside_total = 0;
  for (std::uint32_t i = 0; i < a.trials; ++i) {
    const PointConfig cfg = random_point_config(a.d, a.n, 1000, Seed{a.seed + i});
    const std::uint64_t inside = count_containing_simplices(cfg);
    const BigInt directed = count_directed(geometric_induce(cfg), {o.threads}).directed;
    inside_total += inside;
    if (directed != inside)
      return "seed " + std::to_string(a.seed + i) + ": " + std::to_string(inside) + " containing simplices vs " +
             directed.str() + " directed\n" + format_point_config(cfg);
  }
  r.count("containing_simplices_total", inside_total);
  return {};
}

std::string suite_product(const VerifyArgs& a, Report& r, const Output&) {
  const std::uint32_t m = a.n;  // --n doubles as m for this suite
  const ProductSpec spec{a.d, m};
  const Tournament t = product_tournament(spec);
  const DigitTable digits(spec);
  r.shape(a.d, t.n()).count("m", m);
  std::vector<Vertex> s(a.d + 1);
  for (std::uint32_t i = 0; i <= a.d; ++i) s[i] = i;
  std::uint64_t checked = 0;
  do {
    ++checked;
    if (product_directed_predicate(spec, digits, s) != is_directed_mask(t.face_mask(s), a.d + 1))
      return "predicate disagrees on " + KSubset(s).str();
  } while (next_colex(s, t.n()));
  r.count("simplices_checked", checked);
  return {};
}

std::string suite_file(const VerifyArgs& a, Report& r, const Output& o) {
  const Tournament t = hot1::read_file(a.file);
  r.shape(t.d(), t.n()).text("file", a.file);
  return check_tournament_identities(t, r, o);
}

int run_verify(const VerifyArgs& a, const Output& o) {
  static const std::map<std::string, SuiteFn> suites{{"lemma-min", suite_lemma_min},
                                                     {"thm2", suite_thm2},
                                                     {"double-count", suite_double_count},
                                                     {"geometry", suite_geometry},
                                                     {"product", suite_product}};
  Report r("verify");
  std::string bad;
  if (!a.file.empty()) {
    r.text("suite", "file");
    bad = suite_file(a, r, o);
  } else {
    const auto it = suites.find(a.suite);
    if (it == suites.end()) throw CLI::ValidationError("--suite", "unknown suite '" + a.suite + "'");
    r.text("suite", a.suite);
    bad = it->second(a, r, o);
  }
  r.status(bad.empty() ? "pass" : "fail");
  if (!bad.empty()) r.text("counterexample", bad);
  o.emit(r);
  return bad.empty() ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hotlab: higher-order tournament laboratory"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.json, "Emit one JSON report object");
  app.add_option("--csv", out.csv, "Append one CSV report row to this file");
  app.add_option("--threads", out.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a tournament and write a HOT1 file");
  gen->require_subcommand(1);
  GenArgs g;
  auto* gen_random = gen->add_subcommand("random", "Independent fair signs");
  gen_random->add_option("--d", g.d)->required();
  gen_random->add_option("--n", g.n)->required();
  gen_random->add_option("--seed", g.seed);
  gen_random->add_option("--out", g.out)->required();
  gen_random->callback([&] {
    action = [&] {
      Report r("gen.random");
      r.seed(g.seed);
      return finish_gen(out, r, random_tournament(g.d, g.n, Seed{g.seed}), g.out);
    };
  });
  auto* gen_minority = gen->add_subcommand("minority", "3-tournament induced from a random 2-tournament");
  gen_minority->add_option("--n", g.n)->required();
  gen_minority->add_option("--seed", g.seed);
  gen_minority->add_option("--out", g.out)->required();
  gen_minority->callback([&] {
    action = [&] {
      Report r("gen.minority");
      r.seed(g.seed);
      return finish_gen(out, r, minority_induce_3(random_tournament(2, g.n, Seed{g.seed})), g.out);
    };
  });
  auto* gen_product = gen->add_subcommand("product", "Digit-product construction on (d+1)^m vertices");
  gen_product->add_option("--d", g.d)->required();
  gen_product->add_option("--m", g.m)->required();
  gen_product->add_option("--base-sign", g.base_sign, "+1 or -1")->check(CLI::IsMember({-1, 1}));
  gen_product->add_option("--tie-sign", g.tie_sign, "+1 or -1")->check(CLI::IsMember({-1, 1}));
  gen_product->add_option("--out", g.out)->required();
  gen_product->callback([&] {
    action = [&] {
      Report r("gen.product");
      const ProductSpec spec{g.d, g.m, parse_sign(g.base_sign), parse_sign(g.tie_sign)};
      r.count("m", g.m).count("tied_sets", product_tied_sets(spec));
      return finish_gen(out, r, product_tournament(spec), g.out);
    };
  });
  auto* gen_rot = gen->add_subcommand("rotational", "Rotational 2-tournament on odd n");
  auto* rot_pos = gen_rot->add_option("n_pos", g.n, "Vertex count (odd)");
  gen_rot->add_option("--n", g.n)->excludes(rot_pos);
  gen_rot->add_option("--out", g.out)->required();
  gen_rot->callback([&] {
    action = [&] {
      Report r("gen.rotational");
      return finish_gen(out, r, rotational_tournament(g.n), g.out);
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Count directed simplices of a HOT1 file");
  std::string count_file;
  std::uint64_t samples = 0, count_seed = default_seed, budget_limit = CountOptions{}.budget;
  bool histogram = false;
  count->add_option("file", count_file)->required();
  count->add_option("--sample", samples, "Estimate from this many uniform samples");
  count->add_option("--seed", count_seed);
  count->add_option("--budget", budget_limit, "Maximum simplex evaluations for an exact census");
  count->add_flag("--histogram", histogram, "Also report the compatible-pair histogram");
  count->callback([&] {
    action = [&] {
      const Tournament t = hot1::read_file(count_file);
      Report r(samples ? "count.sample" : "count");
      r.shape(t.d(), t.n()).text("file", count_file);
      if (samples) {
        const SampleEstimate e = sample_directed_fraction(t, samples, Seed{count_seed}, out.threads);
        r.seed(count_seed).count("samples", e.samples).count("hits", e.hits);
        r.fraction("estimate", e.estimate()).real("standard_error", e.standard_error());
      } else {
        const CountOptions opt{out.threads, budget_limit};
        census_fields(r, count_directed(t, opt));
        if (histogram) {
          const auto h = compatible_pair_histogram(t, opt);
          const BigInt total = big_binomial(t.n(), t.d() + 1);
          std::string joined;
          for (std::size_t c = 0; c < h.size(); ++c) joined += (c ? " " : "") + std::to_string(h[c]);
          r.text("compatible_pair_histogram", joined);
          if (total > 0) {
            r.fraction("fraction_at_minimum_pairs", Rational(BigInt(h[s_of_d(t.d())]), total));
            r.fraction("fraction_directed_or_minimum",
                       Rational(BigInt(h[s_of_d(t.d())]) + h[face_pairs(t.d())], total));
          }
        }
      }
      out.emit(r);
      return static_cast<int>(ok);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check identities on a file or a named suite");
  VerifyArgs v;
  verify->add_option("file", v.file, "HOT1 file to check (double counting, sandwich, upper bound)");
  verify->add_option("--suite", v.suite, "lemma-min | thm2 | double-count | geometry | product");
  verify->add_option("--d", v.d);
  verify->add_option("--n", v.n, "Vertex count (for product: the exponent m)");
  verify->add_option("--seed", v.seed);
  verify->add_option("--trials", v.trials);
  verify->callback([&] {
    if (v.file.empty() && v.suite.empty()) throw CLI::ValidationError("verify", "give a file or --suite");
    action = [&] { return run_verify(v, out); };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds for (d, n)");
  std::uint32_t bd = 3;
  std::uint64_t bn = 100;
  bounds->add_option("--d", bd)->required();
  bounds->add_option("--n", bn)->required();
  bounds->callback([&] {
    action = [&] {
      const BoundReport b = bound_report(bd, bn);
      const ProductConstants pc = closed_form_constants(bd);
      Report r("bounds");
      r.shape(bd, bn)
          .count("s_d", b.s_d)
          .count("total_simplices", b.total_simplices)
          .count("exact_upper", b.exact_upper)
          .count("pairs_upper", b.pairs_upper)
          .fraction("exact_upper_fraction", b.exact_upper_fraction)
          .fraction("asymptotic_upper_fraction", b.asymptotic_upper_fraction)
          .fraction("random_lower_fraction", b.random_lower_fraction)
          .fraction("product_limit_fraction", b.product_limit_fraction)
          .fraction("product_x", pc.x)
          .fraction("product_y", pc.y);
      if (bd == 2 && bn >= 3) r.count("exact_d2_maximum", exact_formula_d2(bn));
      out.emit(r);
      return static_cast<int>(ok);
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Exact maximum directed count over all tournaments");
  SearchSpec ss;
  std::string strategy = "branch_and_bound", checkpoint, witness_out;
  bool no_fix = false, resume = false;
  std::uint64_t stop_after = 0;
  search->add_option("--d", ss.d)->required();
  search->add_option("--n", ss.n)->required();
  search->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"exhaustive", "branch_and_bound", "bnb"}));
  search->add_flag("--no-fix-first", no_fix, "Search both values of the first sign");
  search->add_option("--checkpoint", checkpoint, "HOTS checkpoint path");
  search->add_flag("--resume", resume, "Continue from --checkpoint");
  search->add_option("--checkpoint-interval", ss.checkpoint_interval, "Assignments between checkpoint writes");
  search->add_option("--stop-after", stop_after, "Interrupt after this many assignments");
  search->add_option("--out", witness_out, "Write the witness as HOT1");
  search->callback([&] {
    if (resume && checkpoint.empty()) throw CLI::ValidationError("--resume", "needs --checkpoint");
    action = [&] {
      ss.strategy = strategy == "exhaustive" ? SearchStrategy::exhaustive : SearchStrategy::branch_and_bound;
      ss.fix_first_sign = !no_fix;
      SearchControl c;
      c.threads = out.threads;
      if (stop_after) c.stop_after = stop_after;
      if (!checkpoint.empty()) c.checkpoint_path = checkpoint;
      std::optional<SearchCheckpoint> from;
      if (resume) from = load_checkpoint(checkpoint);
      const SearchOutcome o = search_max_directed(ss, c, from);
      Report r("search");
      r.shape(ss.d, ss.n).status(o.complete ? "ok" : "partial");
      r.text("strategy", to_string(ss.strategy)).flag("fix_first_sign", ss.fix_first_sign);
      r.count("max_count", o.max_count)
          .count("total_simplices", big_binomial(ss.n, ss.d + 1))
          .fraction("max_fraction", Rational(BigInt(o.max_count), std::max<BigInt>(1, big_binomial(ss.n, ss.d + 1))))
          .count("assignments_explored", o.assignments_explored)
          .flag("complete", o.complete)
          .count("shards_done", o.shards_done)
          .count("shards_total", o.shards_total);
      if (ss.n > ss.d) r.count("exact_upper", exact_upper_bound(ss.d, ss.n));
      std::string hex;
      for (auto b : hot1::encode(o.witness)) {
        static const char* digits = "0123456789abcdef";
        hex += digits[b >> 4];
        hex += digits[b & 15];
      }
      r.text("witness_hot1_hex", hex);
      if (!witness_out.empty()) {
        hot1::write_file(witness_out, o.witness);
        r.text("out", witness_out);
      }
      out.emit(r);
      return static_cast<int>(ok);
    };
  });

  // geom
  auto* geom = app.add_subcommand("geom", "Induce a tournament from a point configuration");
  std::string points_file, geom_out;
  geom->add_option("--points", points_file)->required();
  geom->add_option("--out", geom_out, "Write the induced tournament as HOT1");
  geom->callback([&] {
    action = [&] {
      std::ifstream in(points_file);
      if (!in) throw format_error("cannot open " + points_file);
      const PointConfig cfg = parse_point_config(in);
      const Tournament t = geometric_induce(cfg);
      const Census c = count_directed(t, {out.threads});
      const std::uint64_t inside = count_containing_simplices(cfg);
      Report r("geom");
      r.shape(cfg.d, cfg.n()).status(c.directed == inside ? "ok" : "fail");
      census_fields(r, c);
      r.count("containing_simplices", inside).flag("correspondence_holds", c.directed == inside);
      if (!geom_out.empty()) {
        hot1::write_file(geom_out, t);
        r.text("out", geom_out);
      }
      out.emit(r);
      return static_cast<int>(c.directed == inside ? ok : verify_failed);
    };
  });

  // info
  auto* info = app.add_subcommand("info", "Dump a HOT1 header");
  std::string info_file;
  info->add_option("file", info_file)->required();
  info->callback([&] {
    action = [&] {
      const auto bytes = hot1::read_bytes(info_file);
      const Tournament t = hot1::decode(bytes);
      Report r("info");
      r.shape(t.d(), t.n())
          .text("file", info_file)
          .text("format", "HOT1")
          .count("sign_bits", t.num_signs())
          .count("payload_bytes", bytes.size() - hot1::header_size);
      std::uint64_t plus = 0;
      for (auto w : t.words()) plus += static_cast<std::uint64_t>(std::popcount(w));
      r.count("plus_signs", plus);
      out.emit(r);
      return static_cast<int>(ok);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return budget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return domain;
  }
}
