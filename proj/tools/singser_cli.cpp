// Command-line front end over the public C interface.
//
//   singser list
//   singser compute <op> [flags]      one quantity to stdout
//   singser verify <suite> [flags]    run a verification suite
//   singser sweep <op> --h <grid>     tabulate an operation across a grid
//
// Exit codes: 0 success / suite passed, 1 suite envelope failure, 2 bad
// usage or invalid input, 3 capacity or tolerance overrun.  Report bytes
// are deterministic for a fixed config; timing goes to the other stream.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "singser.h"

namespace {

using nlohmann::ordered_json;

int exit_for(singser_status st) {
  switch (st) {
    case SINGSER_OK:
      return 0;
    case SINGSER_ECAPACITY:
    case SINGSER_ETOL:
      return 3;
    default:
      return 2;
  }
}

int fail(singser_status st) {
  std::fprintf(stderr, "error: %s\n", singser_last_error());
  return exit_for(st);
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto piece = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t used = 0;
    out.push_back(std::stoll(piece, &used));
    if (used != piece.size()) throw std::invalid_argument("not an integer: " + piece);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// h accepts "a..b" (window onto the suite default grid) or a comma list.
ordered_json h_to_json(const std::string& s) {
  if (s.find("..") != std::string::npos) return s;
  return parse_int_list(s);
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SINGSER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// Emits report bytes to the chosen sink; the human summary and wall-clock
// go to the opposite stream so piped output stays parseable.
int emit_report(const std::string& bytes, const std::string& out_path,
                const std::string& summary) {
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return 2;
    }
    f << bytes;
    std::fputs(summary.c_str(), stdout);
  } else {
    std::fputs(bytes.c_str(), stdout);
    std::fputs(summary.c_str(), stderr);
  }
  return 0;
}

struct SweepRow {
  std::string label;
  std::int64_t h;
  double computed;
  double predicted;
};

std::string sweep_json(const std::string& op, const ordered_json& config,
                       const std::vector<SweepRow>& rows,
                       const std::string& note) {
  ordered_json j;
  j["schema_version"] = 1;
  j["id"] = "sweep:" + op;
  j["version"] = singser_version();
  j["config"] = config;
  auto arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json jr;
    jr["case"] = r.label;
    jr["h"] = r.h;
    jr["computed"] = r.computed;
    jr["predicted"] = r.predicted;
    jr["residual"] = r.computed - r.predicted;
    arr.push_back(std::move(jr));
  }
  j["rows"] = std::move(arr);
  j["slope"] = nullptr;
  j["slope_stderr"] = nullptr;
  j["pass"] = true;
  j["warn"] = false;
  j["notes"] = {note};
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "experiment,h,computed,predicted,residual\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%.17g,%.17g\n",
                  r.label.c_str(), (long long)r.h, r.computed, r.predicted,
                  r.computed - r.predicted);
    out += buf;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular series and constrained prime-tuple sums"};
  app.require_subcommand(1);
  // --h is a real option below, so help must not claim -h.
  app.set_help_flag("--help", "print this help and exit");
  auto sub = [](CLI::App* parent, const char* name, const char* desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->set_help_flag("--help", "print this help and exit");
    return s;
  };

  // ---- list ----------------------------------------------------------
  auto* list_cmd = sub(&app, "list", "list verification suites");

  // ---- compute -------------------------------------------------------
  auto* compute = sub(&app, "compute", "evaluate one quantity");
  compute->require_subcommand(1);

  std::string set_str;
  bool zero_variant = false;
  std::int64_t c_r = 1, c_m = 0, c_h = 0;
  int c_k = 2;
  std::uint64_t c_limit = 1000000;
  std::string c_classes = "1,1";

  auto* sing = sub(compute, "sing", "singular series of an offset tuple");
  sing->add_option("--set", set_str, "comma-separated offsets")->required();
  sing->add_flag("--zero", zero_variant, "centered (inclusion-exclusion) variant");
  sing->add_option("--r", c_r, "remove Euler factors at primes dividing r");
  sing->add_option("--prime-limit", c_limit, "Euler product truncation");

  auto* twot = sub(compute, "two-term", "two-element closed form");
  twot->add_option("--m", c_m, "separation (nonzero)")->required();
  twot->add_option("--r", c_r, "modulus");
  twot->add_option("--prime-limit", c_limit, "tail reference point");

  auto* c0cmd = sub(compute, "c0", "pair main-term constant");
  c0cmd->add_option("--r", c_r, "modulus")->required();

  auto* pm = sub(compute, "pair-main", "pair correlation main term");
  pm->add_option("--h", c_h, "window length")->required();
  pm->add_option("--r", c_r, "modulus");

  auto* gal = sub(compute, "gallagher", "moment ratio vs Poisson");
  gal->add_option("--h", c_h, "window length")->required();
  gal->add_option("--k", c_k, "moment order");
  gal->add_option("--prime-limit", c_limit, "singular series truncation");

  auto* v2c = sub(compute, "v2-closed", "closed V2 term breakdown");
  v2c->add_option("--h", c_h, "window length")->required();
  v2c->add_option("--r", c_r, "modulus");
  v2c->add_option("--classes", c_classes, "two residue classes c1,c2");

  // ---- verify ----------------------------------------------------------
  auto* verify = sub(&app, "verify", "run a verification suite");
  std::string v_suite, v_h, v_classes, v_out, v_format = "json";
  std::int64_t v_r = 0, v_q = 0;
  int v_k = 0, v_threads = 0;
  std::uint64_t v_limit = 1000000;
  verify->add_option("suite", v_suite, "suite name (see: singser list)")->required();
  verify->add_option("--h", v_h, "h grid: comma list, or a..b window onto the default grid");
  verify->add_option("--r", v_r, "modulus filter / override");
  verify->add_option("--q", v_q, "auxiliary modulus filter");
  verify->add_option("--k", v_k, "order override (gallagher, oddterm-report)");
  verify->add_option("--classes", v_classes, "residue classes, comma-separated");
  verify->add_option("--prime-limit", v_limit, "Euler product truncation");
  verify->add_option("--threads", v_threads, "worker threads (default $SINGSER_THREADS or 1)");
  verify->add_option("--out", v_out, "write the report here instead of stdout");
  verify->add_option("--format", v_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- sweep -----------------------------------------------------------
  auto* sweep = sub(&app, "sweep", "tabulate an operation across a grid");
  std::string s_op, s_h, s_classes = "1,1", s_out, s_format = "csv";
  std::int64_t s_r = 1;
  int s_k = 2;
  std::uint64_t s_limit = 1000000;
  sweep->add_option("op", s_op, "one of: two-term, v2-closed, pair-main, gallagher, c0")
      ->required()
      ->check(CLI::IsMember({"two-term", "v2-closed", "pair-main", "gallagher", "c0"}));
  sweep->add_option("--h", s_h, "grid values, comma-separated (for two-term: separations; for c0: moduli)")
      ->required();
  sweep->add_option("--r", s_r, "modulus");
  sweep->add_option("--k", s_k, "moment order (gallagher)");
  sweep->add_option("--classes", s_classes, "residue classes c1,c2 (v2-closed)");
  sweep->add_option("--prime-limit", s_limit, "Euler product truncation");
  sweep->add_option("--out", s_out, "write the table here instead of stdout");
  sweep->add_option("--format", s_format, "table format")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    // ---- list ----
    if (list_cmd->parsed()) {
      for (size_t i = 0; i < singser_suite_count(); ++i)
        std::printf("%s\n", singser_suite_name(i));
      return 0;
    }

    // ---- compute ----
    if (compute->parsed()) {
      double value = 0, tail = 0;
      singser_status st = SINGSER_OK;
      if (sing->parsed()) {
        auto offs = parse_int_list(set_str);
        st = zero_variant
                 ? singser_singular_series_zero(offs.data(), offs.size(), c_r,
                                                c_limit, &value, &tail)
                 : singser_singular_series(offs.data(), offs.size(), c_r,
                                           c_limit, &value, &tail);
        if (st != SINGSER_OK) return fail(st);
        std::printf("%s({%s}; r=%" PRId64 ", prime_limit=%" PRIu64
                    ") = %.15g (tail %.3g)\n",
                    zero_variant ? "singular_series_zero" : "singular_series",
                    set_str.c_str(), c_r, c_limit, value, tail);
      } else if (twot->parsed()) {
        st = singser_two_term(c_m, c_r, c_limit, &value, &tail);
        if (st != SINGSER_OK) return fail(st);
        std::printf("two_term(m=%" PRId64 ", r=%" PRId64 ") = %.15g (tail %.3g)\n",
                    c_m, c_r, value, tail);
      } else if (c0cmd->parsed()) {
        st = singser_c0(c_r, &value);
        if (st != SINGSER_OK) return fail(st);
        std::printf("C0(%" PRId64 ") = %.15g\n", c_r, value);
      } else if (pm->parsed()) {
        st = singser_pair_main_term(c_h, c_r, &value);
        if (st != SINGSER_OK) return fail(st);
        std::printf("pair_main_term(h=%" PRId64 ", r=%" PRId64 ") = %.15g\n",
                    c_h, c_r, value);
      } else if (gal->parsed()) {
        st = singser_gallagher_ratio(c_h, c_k, c_limit, &value);
        if (st != SINGSER_OK) return fail(st);
        std::printf("gallagher_ratio(h=%" PRId64 ", k=%d) = %.15g\n", c_h, c_k,
                    value);
      } else if (v2c->parsed()) {
        auto cls = parse_int_list(c_classes);
        if (cls.size() != 2) {
          std::fprintf(stderr, "error: --classes needs exactly two values\n");
          return 2;
        }
        double terms[6];
        st = singser_v2_closed(c_h, c_r, cls[0], cls[1], terms);
        if (st != SINGSER_OK) return fail(st);
        std::printf("V2_closed(h=%" PRId64 ", r=%" PRId64 ", c=%" PRId64
                    ",%" PRId64 ")\n",
                    c_h, c_r, cls[0], cls[1]);
        std::printf("  quadratic %.15g\n  mertens   %.15g\n  log       %.15g\n"
                    "  constant  %.15g\n  character %.15g\n  total     %.15g\n",
                    terms[0], terms[1], terms[2], terms[3], terms[4], terms[5]);
      }
      return 0;
    }

    // ---- verify ----
    if (verify->parsed()) {
      ordered_json cfg;
      cfg["suite"] = v_suite;
      if (!v_h.empty()) cfg["h"] = h_to_json(v_h);
      if (v_r > 0) cfg["r"] = v_r;
      if (v_q > 0) cfg["q"] = v_q;
      if (v_k > 0) cfg["k"] = v_k;
      if (!v_classes.empty()) cfg["classes"] = parse_int_list(v_classes);
      cfg["prime_limit"] = v_limit;
      cfg["threads"] = resolve_threads(v_threads);

      auto t0 = std::chrono::steady_clock::now();
      singser_report* rep = nullptr;
      singser_status st = singser_run_suite(cfg.dump().c_str(), &rep);
      auto t1 = std::chrono::steady_clock::now();
      if (st != SINGSER_OK) return fail(st);

      int pass = singser_report_pass(rep);
      int warn = singser_report_warn(rep);
      char summary[160];
      std::snprintf(summary, sizeof summary, "suite %s: %s%s in %.2f s\n",
                    v_suite.c_str(), pass ? "PASS" : "FAIL",
                    warn ? " (warnings)" : "",
                    std::chrono::duration<double>(t1 - t0).count());
      std::string bytes = v_format == "csv" ? singser_report_csv(rep)
                                            : singser_report_json(rep);
      singser_report_free(rep);
      int rc = emit_report(bytes, v_out, summary);
      if (rc != 0) return rc;
      return pass ? 0 : 1;
    }

    // ---- sweep ----
    if (sweep->parsed()) {
      auto grid = parse_int_list(s_h);
      auto cls = parse_int_list(s_classes);
      std::vector<SweepRow> rows;
      ordered_json cfg;
      cfg["op"] = s_op;
      cfg["grid"] = grid;
      std::string note;
      char label[96];

      for (auto g : grid) {
        double value = 0, tail = 0;
        SweepRow row;
        singser_status st = SINGSER_OK;
        if (s_op == "two-term") {
          st = singser_two_term(g, s_r, s_limit, &value, &tail);
          std::snprintf(label, sizeof label, "two-term r=%" PRId64, s_r);
          row = {label, g, value, 0.0};
          note = "grid values are separations m; predicted column is 0";
        } else if (s_op == "v2-closed") {
          if (cls.size() != 2) {
            std::fprintf(stderr, "error: --classes needs exactly two values\n");
            return 2;
          }
          double terms[6];
          st = singser_v2_closed(g, s_r, cls[0], cls[1], terms);
          std::snprintf(label, sizeof label,
                        "v2-closed r=%" PRId64 " c=%" PRId64 ":%" PRId64, s_r,
                        cls[0], cls[1]);
          row = {label, g, terms[5], terms[2]};
          note = "predicted column holds the log term of the closed form";
        } else if (s_op == "pair-main") {
          st = singser_pair_main_term(g, s_r, &value);
          std::snprintf(label, sizeof label, "pair-main r=%" PRId64, s_r);
          row = {label, g, value, 0.0};
          note = "predicted column is 0";
        } else if (s_op == "gallagher") {
          st = singser_gallagher_ratio(g, s_k, s_limit, &value);
          std::snprintf(label, sizeof label, "gallagher k=%d", s_k);
          row = {label, g, value, 1.0};
          note = "predicted column is the Poisson reference 1";
        } else {  // c0
          st = singser_c0(g, &value);
          row = {"c0", g, value, 0.0};
          note = "grid values are moduli r; predicted column is 0";
        }
        if (st != SINGSER_OK) return fail(st);
        rows.push_back(row);
      }
      if (s_op == "v2-closed" || s_op == "pair-main" || s_op == "two-term")
        cfg["r"] = s_r;
      if (s_op == "gallagher") cfg["k"] = s_k;
      if (s_op == "v2-closed") cfg["classes"] = cls;
      if (s_op != "c0" && s_op != "pair-main") cfg["prime_limit"] = s_limit;

      std::string bytes = s_format == "json" ? sweep_json(s_op, cfg, rows, note)
                                             : sweep_csv(rows);
      return emit_report(bytes, s_out, "");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
