// Command-line laboratory: four-cube sums, prime coverings of integer
// segments, self-power digit counts, and two-letter rotation words.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "doi2/covering.hpp"
#include "doi2/repro.hpp"
#include "doi2/self_power.hpp"
#include "doi2/sturmian.hpp"
#include "doi2/svg_path.hpp"
#include "doi2/waring.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace doi2;

namespace {

// Bad user input (malformed tokens, impossible flag combinations).  Mapped
// to exit code 2, as opposed to 3 for internal failures.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Fmt { text, json_fmt, csv };

struct Global {
  unsigned workers = 1;
  unsigned precision_bits = 128;
  bool json_flag = false;
  bool csv_flag = false;
  std::string output_path;
  int rc = 0;  // callbacks set 1 on semantic check failure

  Fmt fmt() const { return json_flag ? Fmt::json_fmt : csv_flag ? Fmt::csv : Fmt::text; }

  void emit(const std::string& s) const {
    if (output_path.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file " + output_path);
    f << s;
    f.flush();
    if (!f) throw std::runtime_error("cannot write output file " + output_path);
  }

  void emit_json(json j) const { emit(j.dump(2) + "\n"); }
};

// Exact integer parsing, scientific notation included: "1e8" is the integer
// 10^8, "2.5e3" is 2500, and anything non-integral ("1e-3", "1.23e1") is
// rejected.  Never round-trips through floating point.
mpz_class parse_exact_integer(const std::string& tok) {
  const auto bad = [&] { return UsageError("malformed integer token: " + tok); };
  std::size_t i = 0;
  bool neg = false;
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) neg = tok[i++] == '-';
  std::string digits, frac;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
    digits.push_back(tok[i++]);
  }
  if (i < tok.size() && tok[i] == '.') {
    ++i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
      frac.push_back(tok[i++]);
    }
  }
  unsigned long exp10 = 0;
  if (i < tok.size() && (tok[i] == 'e' || tok[i] == 'E')) {
    ++i;
    if (i < tok.size() && tok[i] == '+') ++i;
    std::size_t start = i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i == start) throw bad();  // covers "1e-3": no exponent digits seen
    const std::string es = tok.substr(start, i - start);
    if (es.size() > 6) throw UsageError("exponent too large in token: " + tok);
    exp10 = std::stoul(es);
  }
  if (i != tok.size() || (digits.empty() && frac.empty())) throw bad();
  if (exp10 < frac.size()) {
    throw UsageError("token does not denote an integer: " + tok);
  }
  mpz_class v(digits.empty() && frac.empty() ? "0" : digits + frac, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, exp10 - frac.size());
  v *= scale;
  return neg ? mpz_class(-v) : v;
}

uint64_t parse_exact_u64(const std::string& tok) {
  const mpz_class v = parse_exact_integer(tok);
  if (v < 0 || !v.fits_ulong_p()) {
    throw UsageError("value out of range for this option: " + tok);
  }
  return v.get_ui();
}

// ---- serialization helpers ------------------------------------------------

json quads_json(const std::vector<CubeQuad>& quads, std::size_t shown) {
  json arr = json::array();
  for (std::size_t i = 0; i < shown; ++i) {
    json row = json::array();
    for (const mpz_class& c : quads[i].c) row.push_back(c.get_str());
    arr.push_back(row);
  }
  return arr;
}

std::string quads_text(const std::vector<CubeQuad>& quads, std::size_t shown) {
  std::ostringstream out;
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& c = quads[i].c;
    out << c[0].get_str() << " " << c[1].get_str() << " " << c[2].get_str() << " "
        << c[3].get_str() << "\n";
  }
  return out.str();
}

std::string quads_csv(const std::vector<CubeQuad>& quads, std::size_t shown) {
  std::ostringstream out;
  out << "m,n,p,q\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& c = quads[i].c;
    out << c[0].get_str() << "," << c[1].get_str() << "," << c[2].get_str() << ","
        << c[3].get_str() << "\n";
  }
  return out.str();
}

json placements_json(const CoveringState& s) {
  json arr = json::array();
  for (const auto& [p, off] : s.placements) arr.push_back(json::array({p, off}));
  return arr;
}

std::string placements_text(const CoveringState& s) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, off] : s.placements) {
    out << (first ? "" : " ") << p << "@" << off;
    first = false;
  }
  return out.str();
}

std::string method_name(DigitCountMethod m) {
  return m == DigitCountMethod::exact ? "exact" : "certified-log";
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---- word plumbing ---------------------------------------------------------

struct WordOpts {
  std::string theta = "sqrt7/7";
  std::string phi = "1/5";
  std::string preset;
};

void add_word_opts(CLI::App* sub, WordOpts& o) {
  sub->add_option("--theta", o.theta,
                  "rotation step: token like sqrt7/7, pi/8, 0.2 or 1/5")
      ->capture_default_str();
  sub->add_option("--phi", o.phi, "rotation start point, same token forms")
      ->capture_default_str();
  sub->add_option("--preset", o.preset, "named word: fib (golden rotation)");
}

RotationWord make_word(const WordOpts& o, unsigned precision) {
  if (o.preset == "fib") return fibonacci_word(precision);
  if (!o.preset.empty()) throw UsageError("unknown preset: " + o.preset);
  return RotationWord(parse_real_token(o.theta), parse_real_token(o.phi), precision);
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  g.workers = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{
      "Laboratory for four-cube sums, prime coverings of integer segments,\n"
      "self-power digit counts, and rotation-word statistics."};
  app.require_subcommand(1);
  app.fallthrough();
  auto* jf = app.add_flag("--json", g.json_flag, "JSON output");
  auto* cf = app.add_flag("--csv", g.csv_flag, "CSV output");
  jf->excludes(cf);
  cf->excludes(jf);
  app.add_option("--output", g.output_path, "write primary output to a file");
  app.add_option("--workers", g.workers, "worker thread count")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--precision-bits", g.precision_bits,
                 "starting interval precision for irrational rotations")
      ->check(CLI::Range(32u, 1u << 20))
      ->envname("DOI2_PRECISION_BITS")
      ->capture_default_str();

  // ---- waring ----------------------------------------------------------
  auto* waring = app.add_subcommand("waring", "sums of four nonnegative cubes");
  waring->require_subcommand(1);
  waring->fallthrough();

  static std::string target_str;
  static bool no_zero = false;
  static uint64_t limit_first = 0;

  auto* reps = waring->add_subcommand("reps", "list all four-cube representations");
  reps->fallthrough();
  reps->add_option("--target", target_str, "number to represent (exact, 1e8 allowed)")
      ->required();
  reps->add_flag("--no-zero", no_zero, "positive components only");
  reps->add_option("--limit-first", limit_first, "print only the first K quads");
  reps->callback([&] {
    const mpz_class target = parse_exact_integer(target_str);
    const auto quads = four_cube_reps(target, !no_zero, g.workers);
    const std::size_t shown =
        limit_first && limit_first < quads.size() ? limit_first : quads.size();
    switch (g.fmt()) {
      case Fmt::json_fmt: {
        json j;
        j["target"] = target.get_str();
        j["quads"] = quads_json(quads, shown);
        j["ordered_count"] = ordered_count(quads);
        g.emit_json(j);
        break;
      }
      case Fmt::csv:
        g.emit(quads_csv(quads, shown));
        break;
      case Fmt::text:
        g.emit("target " + target.get_str() + "\n" + quads_text(quads, shown) +
               "distinct " + std::to_string(quads.size()) + "\nordered " +
               std::to_string(ordered_count(quads)) + "\n");
        break;
    }
  });

  auto* count = waring->add_subcommand("count", "count representations only");
  count->fallthrough();
  count->add_option("--target", target_str, "number to represent")->required();
  count->add_flag("--no-zero", no_zero, "positive components only");
  count->callback([&] {
    const mpz_class target = parse_exact_integer(target_str);
    const auto quads = four_cube_reps(target, !no_zero, g.workers);
    const uint64_t ordered = ordered_count(quads);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["target"] = target.get_str();
      j["distinct"] = quads.size();
      j["ordered"] = ordered;
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("distinct,ordered\n" + std::to_string(quads.size()) + "," +
             std::to_string(ordered) + "\n");
    } else {
      g.emit("distinct " + std::to_string(quads.size()) + "\nordered " +
             std::to_string(ordered) + "\n");
    }
  });

  static std::string root_str;
  static unsigned long lift_b = 0;
  auto* lift = waring->add_subcommand(
      "lift", "scale a representation of 10^(2+3a) up to 10^(2+3(a+b))");
  lift->fallthrough();
  lift->add_option("--root", root_str, "comma-separated quad, e.g. 1,2,3,4")->required();
  lift->add_option("--b", lift_b, "number of factor-10 steps to apply")->required();
  lift->callback([&] {
    std::vector<mpz_class> parts;
    std::stringstream ss(root_str);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_exact_integer(item));
    if (parts.size() != 4) throw UsageError("--root needs exactly four components");
    const CubeQuad root(parts[0], parts[1], parts[2], parts[3]);
    const CubeQuad lifted = tower_lift(root, lift_b);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["root"] = quads_json({root}, 1)[0];
      j["b"] = lift_b;
      j["quad"] = quads_json({lifted}, 1)[0];
      j["target"] = lifted.target.get_str();
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit(quads_csv({lifted}, 1));
    } else {
      g.emit(quads_text({lifted}, 1) + "target " + lifted.target.get_str() + "\n");
    }
  });

  static bool strong = false;
  auto* primitive = waring->add_subcommand(
      "primitive", "drop representations that are decimal multiples");
  primitive->fallthrough();
  primitive->add_option("--target", target_str, "number to represent")->required();
  primitive->add_flag("--strong", strong, "require every component coprime to 10s");
  primitive->add_option("--limit-first", limit_first, "print only the first K quads");
  primitive->callback([&] {
    const mpz_class target = parse_exact_integer(target_str);
    const auto all = four_cube_reps(target, true, g.workers);
    const auto prim =
        primitive_solutions(all, strong ? PrimitiveRule::strong : PrimitiveRule::weak);
    const std::size_t shown =
        limit_first && limit_first < prim.size() ? limit_first : prim.size();
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["target"] = target.get_str();
      j["rule"] = strong ? "strong" : "weak";
      j["quads"] = quads_json(prim, shown);
      j["count"] = prim.size();
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit(quads_csv(prim, shown));
    } else {
      g.emit(quads_text(prim, shown) + "count " + std::to_string(prim.size()) + "\n");
    }
  });

  // ---- covering --------------------------------------------------------
  auto* covering = app.add_subcommand("covering", "prime coverings of integer segments");
  covering->require_subcommand(1);
  covering->fallthrough();

  static uint64_t length = 17;
  static std::vector<uint64_t> excluded;
  static bool exhaustive_flag = false, first_found_flag = false;

  auto* search = covering->add_subcommand("search", "find complete effective coverings");
  search->fallthrough();
  search->add_option("--length", length, "window length in boxes")->required();
  search->add_option("--exclude", excluded, "primes that may not be placed")
      ->delimiter(',');
  search->add_flag("--exhaustive", exhaustive_flag, "enumerate every covering (default)");
  search->add_flag("--first-found", first_found_flag, "greedy backtracking, first hit only");
  search->callback([&] {
    if (exhaustive_flag && first_found_flag) {
      throw UsageError("--exhaustive and --first-found are mutually exclusive");
    }
    const SearchMode mode =
        first_found_flag ? SearchMode::first_found : SearchMode::exhaustive;
    const std::set<uint64_t> excl(excluded.begin(), excluded.end());
    const auto found = search_complete_coverings(length, excl, mode, g.workers);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["length"] = length;
      j["excluded"] = json(excl);
      j["mode"] = first_found_flag ? "first_found" : "exhaustive";
      j["count"] = found.size();
      j["coverings"] = json::array();
      for (const CoveringState& s : found) {
        const Instantiation inst = instantiate(s);
        json row;
        row["placements"] = placements_json(s);
        row["a"] = inst.a.get_str();
        row["modulus"] = inst.modulus.get_str();
        j["coverings"].push_back(row);
      }
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << "a,modulus,placements\n";
      for (const CoveringState& s : found) {
        const Instantiation inst = instantiate(s);
        out << inst.a.get_str() << "," << inst.modulus.get_str() << ","
            << placements_text(s) << "\n";
      }
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (const CoveringState& s : found) {
        const Instantiation inst = instantiate(s);
        out << "a " << inst.a.get_str() << " mod " << inst.modulus.get_str() << " : "
            << placements_text(s) << "\n";
      }
      out << "count " << found.size() << "\n";
      g.emit(out.str());
    }
  });

  static std::string to_str;
  static std::string side_str = "right";
  static std::string rule_str = "window";
  static bool report_available = false;
  auto* fcfs = covering->add_subcommand(
      "fcfs", "extend the minimal covering box by box, smallest prime first");
  fcfs->fallthrough();
  fcfs->add_option("--to", to_str, "extend until this box is covered")->required();
  fcfs->add_option("--side", side_str, "right, left, or alternate")
      ->capture_default_str();
  fcfs->add_option("--rule", rule_str, "prime availability: window or half-window")
      ->capture_default_str();
  fcfs->add_flag("--report-available", report_available,
                 "record spare-prime counts per placement");
  fcfs->callback([&] {
    ExtendSide side;
    if (side_str == "right") {
      side = ExtendSide::right;
    } else if (side_str == "left") {
      side = ExtendSide::left;
    } else if (side_str == "alternate") {
      side = ExtendSide::alternate;
    } else {
      throw UsageError("unknown side: " + side_str);
    }
    AvailabilityRule rule;
    if (rule_str == "window") {
      rule = AvailabilityRule::window;
    } else if (rule_str == "half-window") {
      rule = AvailabilityRule::half_window;
    } else {
      throw UsageError("unknown rule: " + rule_str);
    }
    const ExtensionTrace t =
        fcfs_extend(minimal_covering17(), parse_exact_u64(to_str), side, rule);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["steps"] = json::array();
      for (const ExtensionStep& s : t.steps) {
        j["steps"].push_back(json{{"box", s.box}, {"prime", s.prime}});
      }
      if (report_available) {
        json avail;
        for (const ExtensionStep& s : t.steps) {
          avail[std::to_string(s.box)] = s.available_after;
        }
        j["available_at"] = avail;
      }
      j["lo"] = t.lo;
      j["hi"] = t.hi;
      j["stuck"] = t.stuck;
      if (t.stuck) j["stuck_box"] = t.stuck_box;
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << (report_available ? "box,prime,available\n" : "box,prime\n");
      for (const ExtensionStep& s : t.steps) {
        out << s.box << "," << s.prime;
        if (report_available) out << "," << s.available_after;
        out << "\n";
      }
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (const ExtensionStep& s : t.steps) {
        out << "box " << s.box << " prime " << s.prime;
        if (report_available) out << " available " << s.available_after;
        out << "\n";
      }
      out << "window [" << t.lo << ", " << t.hi << "]\n";
      if (t.stuck) out << "stuck at box " << t.stuck_box << "\n";
      g.emit(out.str());
    }
    if (t.stuck) g.rc = 1;
  });

  static std::string start_str;
  auto* verify = covering->add_subcommand(
      "verify", "check that a run of integers is fully linked by shared primes");
  verify->fallthrough();
  verify->add_option("--start", start_str, "first integer of the run")->required();
  verify->add_option("--length", length, "run length")->required();
  verify->add_option("--exclude", excluded, "primes that may not serve as links")
      ->delimiter(',');
  verify->callback([&] {
    const std::set<uint64_t> excl(excluded.begin(), excluded.end());
    const mpz_class start = parse_exact_integer(start_str);
    const bool ok = verify_run(start, length, excl);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["start"] = start.get_str();
      j["length"] = length;
      j["excluded"] = json(excl);
      j["verified"] = ok;
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("start,length,verified\n" + start.get_str() + "," + std::to_string(length) +
             "," + (ok ? "true" : "false") + "\n");
    } else {
      g.emit(ok ? "verified\n" : "not verified\n");
    }
    if (!ok) g.rc = 1;
  });

  static std::vector<std::string> place_strs;
  auto* inst_cmd = covering->add_subcommand(
      "instantiate", "translate a covering into a run of integers");
  inst_cmd->fallthrough();
  inst_cmd->add_option("--length", length, "window length")->capture_default_str();
  inst_cmd->add_option("--place", place_strs,
                       "prime:offset placements (default: the minimal 17-box covering)")
      ->delimiter(',');
  inst_cmd->callback([&] {
    CoveringState s;
    if (place_strs.empty()) {
      s = minimal_covering17();
      if (length != 17) s.length = length;
    } else {
      s.length = length;
      for (const std::string& ps : place_strs) {
        const auto colon = ps.find(':');
        if (colon == std::string::npos) {
          throw UsageError("placement must look like prime:offset, got " + ps);
        }
        s.placements[parse_exact_u64(ps.substr(0, colon))] =
            parse_exact_u64(ps.substr(colon + 1));
      }
    }
    s.validate();
    const Instantiation inst = instantiate(s);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["length"] = s.length;
      j["placements"] = placements_json(s);
      j["a"] = inst.a.get_str();
      j["modulus"] = inst.modulus.get_str();
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("a,modulus\n" + inst.a.get_str() + "," + inst.modulus.get_str() + "\n");
    } else {
      g.emit("a " + inst.a.get_str() + " mod " + inst.modulus.get_str() + "\n");
    }
  });

  // ---- selfpower ---------------------------------------------------------
  auto* selfpower = app.add_subcommand("selfpower", "digit counts of n^n");
  selfpower->require_subcommand(1);
  selfpower->fallthrough();

  static std::string n_str;
  auto* sp_count = selfpower->add_subcommand("count", "digit count of one self-power");
  sp_count->fallthrough();
  sp_count->add_option("--n", n_str, "the n in n^n")->required();
  sp_count->callback([&] {
    const SelfPowerRecord r = selfpower_record(parse_exact_u64(n_str));
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["n"] = r.n;
      j["digit_count"] = r.digit_count.get_str();
      j["constant_word"] = r.is_constant_word;
      j["method"] = method_name(r.method);
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("n,digit_count,repdigit_flag,method\n" + std::to_string(r.n) + "," +
             r.digit_count.get_str() + "," + (r.is_constant_word ? "true" : "false") +
             "," + method_name(r.method) + "\n");
    } else {
      g.emit("l(" + std::to_string(r.n) + "^" + std::to_string(r.n) + ") = " +
             r.digit_count.get_str() + (r.is_constant_word ? " (constant word, " : " (") +
             method_name(r.method) + ")\n");
    }
  });

  static std::string limit_str;
  auto* sp_search = selfpower->add_subcommand(
      "search", "n whose self-power digit count is a constant word");
  sp_search->fallthrough();
  sp_search->add_option("--limit", limit_str, "search n = 1..limit")->required();
  sp_search->callback([&] {
    const auto rows = search_selfpower_cwn(parse_exact_u64(limit_str), g.workers);
    if (g.fmt() == Fmt::json_fmt) {
      json arr = json::array();
      for (const SelfPowerRecord& r : rows) {
        json row;
        row["n"] = r.n;
        row["digit_count"] = r.digit_count.get_str();
        row["constant_word"] = r.is_constant_word;
        row["method"] = method_name(r.method);
        arr.push_back(row);
      }
      g.emit(arr.dump(2) + "\n");
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << "n,digit_count,repdigit_flag,method\n";
      for (const SelfPowerRecord& r : rows) {
        out << r.n << "," << r.digit_count.get_str() << ","
            << (r.is_constant_word ? "true" : "false") << "," << method_name(r.method)
            << "\n";
      }
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (const SelfPowerRecord& r : rows) {
        out << "n " << r.n << " -> " << r.digit_count.get_str() << " ("
            << method_name(r.method) << ")\n";
      }
      out << "hits " << rows.size() << "\n";
      g.emit(out.str());
    }
  });

  static unsigned tuple_k = 2;
  static std::string bound_str;
  static uint64_t limit_results = 0;
  auto* sp_amicable = selfpower->add_subcommand(
      "amicable", "cyclic tuples whose cross-power digit counts are constant words");
  sp_amicable->fallthrough();
  sp_amicable->add_option("--k", tuple_k, "tuple size")->required();
  sp_amicable->add_option("--bound", bound_str, "largest member considered")->required();
  sp_amicable->add_option("--limit-results", limit_results, "stop after this many tuples");
  sp_amicable->callback([&] {
    const auto tuples =
        search_amicable(tuple_k, parse_exact_u64(bound_str), limit_results, g.workers);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["k"] = tuple_k;
      j["bound"] = bound_str;
      j["tuples"] = json::array();
      for (const AmicableTuple& t : tuples) {
        json row;
        row["members"] = t.members;
        json counts = json::array();
        for (const mpz_class& c : t.digit_counts) counts.push_back(c.get_str());
        row["digit_counts"] = counts;
        j["tuples"].push_back(row);
      }
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << "members,digit_counts\n";
      for (const AmicableTuple& t : tuples) {
        for (std::size_t i = 0; i < t.members.size(); ++i) {
          out << (i ? "+" : "") << t.members[i];
        }
        out << ",";
        for (std::size_t i = 0; i < t.digit_counts.size(); ++i) {
          out << (i ? "+" : "") << t.digit_counts[i].get_str();
        }
        out << "\n";
      }
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (const AmicableTuple& t : tuples) {
        out << "(";
        for (std::size_t i = 0; i < t.members.size(); ++i) {
          out << (i ? ", " : "") << t.members[i];
        }
        out << ") ->";
        for (const mpz_class& c : t.digit_counts) out << " " << c.get_str();
        out << "\n";
      }
      out << "tuples " << tuples.size() << "\n";
      g.emit(out.str());
    }
  });

  static std::string seq_str = "S1";
  static std::string count_str;
  auto* sp_gaps = selfpower->add_subcommand(
      "gaps", "successive differences of the showcase sequences");
  sp_gaps->fallthrough();
  sp_gaps->add_option("--seq", seq_str, "S1 (repdigit numbers) or S2 (self-power digit counts)")
      ->capture_default_str();
  sp_gaps->add_option("--count", count_str, "number of sequence terms")->required();
  sp_gaps->callback([&] {
    GapSequence which;
    if (seq_str == "S1") {
      which = GapSequence::repdigit_numbers;
    } else if (seq_str == "S2") {
      which = GapSequence::selfpower_digit_counts;
    } else {
      throw UsageError("unknown sequence: " + seq_str);
    }
    const auto gaps = sequence_gaps(which, parse_exact_u64(count_str));
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["seq"] = seq_str;
      j["count"] = count_str;
      json arr = json::array();
      for (const mpz_class& v : gaps) arr.push_back(v.get_str());
      j["gaps"] = arr;
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << "index,gap\n";
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        out << i + 1 << "," << gaps[i].get_str() << "\n";
      }
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        out << (i ? " " : "") << gaps[i].get_str();
      }
      out << "\n";
      g.emit(out.str());
    }
  });

  // ---- sturmian ----------------------------------------------------------
  auto* sturmian = app.add_subcommand("sturmian", "two-letter rotation words");
  sturmian->require_subcommand(1);
  sturmian->fallthrough();

  static WordOpts wopts;
  static std::string len_str;

  auto* st_prefix = sturmian->add_subcommand("prefix", "print the first letters");
  st_prefix->fallthrough();
  add_word_opts(st_prefix, wopts);
  st_prefix->add_option("--len", len_str, "prefix length")->required();
  st_prefix->callback([&] {
    const RotationWord w = make_word(wopts, g.precision_bits);
    const std::string letters = word_prefix(w, parse_exact_u64(len_str));
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["word"] = w.describe();
      j["length"] = letters.size();
      j["letters"] = letters;
      g.emit_json(j);
    } else {
      g.emit(letters + "\n");
    }
  });

  static unsigned max_n = 10;
  static std::string sample_str = "100000";
  auto* st_complex = sturmian->add_subcommand(
      "complexity", "number of distinct length-n factors for n = 1..max");
  st_complex->fallthrough();
  add_word_opts(st_complex, wopts);
  st_complex->add_option("--max-n", max_n, "largest factor length")->capture_default_str();
  st_complex->add_option("--sample", sample_str, "prefix length to scan")
      ->capture_default_str();
  st_complex->callback([&] {
    const RotationWord w = make_word(wopts, g.precision_bits);
    const auto prof = complexity(w, max_n, parse_exact_u64(sample_str));
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["word"] = w.describe();
      j["sample"] = sample_str;
      j["profile"] = json::array();
      for (const auto& [n, c] : prof) {
        j["profile"].push_back(json{{"n", n}, {"count", c}});
      }
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      std::ostringstream out;
      out << "n,count\n";
      for (const auto& [n, c] : prof) out << n << "," << c << "\n";
      g.emit(out.str());
    } else {
      std::ostringstream out;
      for (const auto& [n, c] : prof) out << "p(" << n << ") = " << c << "\n";
      g.emit(out.str());
    }
  });

  static std::string steps_str;
  static std::string svg_path_str;
  static unsigned svg_unit = 4;
  static std::string mark_color = "red";
  static bool flip = false;

  const auto draw = [&](CLI::App* sub, bool walk_mode) {
    sub->callback([&, walk_mode] {
      const RotationWord w = make_word(wopts, g.precision_bits);
      const uint64_t steps = parse_exact_u64(steps_str);
      const PlanarPath path = walk_mode ? parity_walk(w, steps, flip, g.workers)
                                        : odd_even_curve(w, steps);
      path.validate();
      SvgOptions opts;
      opts.unit = svg_unit;
      opts.mark_color = mark_color;
      const std::string svg = planar_path_svg(path, opts);
      if (svg_path_str.empty()) {
        g.emit(svg);
        return;
      }
      std::ofstream f(svg_path_str, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open svg file " + svg_path_str);
      f << svg;
      f.flush();
      if (!f) throw std::runtime_error("cannot write svg file " + svg_path_str);
      g.emit("wrote " + svg_path_str + " (" + std::to_string(path.points.size()) +
             " points, " + std::to_string(path.marks.size()) + " marks)\n");
    });
  };

  auto* st_curve = sturmian->add_subcommand(
      "curve", "turtle path turning on letter b (left at even steps)");
  st_curve->fallthrough();
  add_word_opts(st_curve, wopts);
  st_curve->add_option("--steps", steps_str, "number of unit steps")->required();
  st_curve->add_option("--svg", svg_path_str, "write the drawing here");
  st_curve->add_option("--unit", svg_unit, "pixels per lattice step")->capture_default_str();
  st_curve->add_option("--mark-color", mark_color, "color of marked points")
      ->capture_default_str();
  draw(st_curve, false);

  auto* st_walk = sturmian->add_subcommand(
      "walk", "turtle path turning on the divisor-parity sign, marking zeros");
  st_walk->fallthrough();
  add_word_opts(st_walk, wopts);
  st_walk->add_option("--steps", steps_str, "number of unit steps")->required();
  st_walk->add_flag("--flip", flip, "swap left and right turns");
  st_walk->add_option("--svg", svg_path_str, "write the drawing here");
  st_walk->add_option("--unit", svg_unit, "pixels per lattice step")->capture_default_str();
  st_walk->add_option("--mark-color", mark_color, "color of marked points")
      ->capture_default_str();
  draw(st_walk, true);

  auto* st_density = sturmian->add_subcommand("density", "proportion of letter b");
  st_density->fallthrough();
  add_word_opts(st_density, wopts);
  st_density->add_option("--sample", sample_str, "prefix length")->required();
  st_density->callback([&] {
    const RotationWord w = make_word(wopts, g.precision_bits);
    const uint64_t sample = parse_exact_u64(sample_str);
    const mpq_class d = density(w, sample);
    mpq_class prod = d * mpq_class(static_cast<unsigned long>(sample));
    prod.canonicalize();
    const std::string b_count = prod.get_num().get_str();
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["word"] = w.describe();
      j["sample"] = sample;
      j["b_count"] = b_count;
      j["density_exact"] = d.get_str();
      j["density"] = d.get_d();
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("sample,b_count,density\n" + std::to_string(sample) + "," + b_count + "," +
             fmt_g(d.get_d()) + "\n");
    } else {
      g.emit("density " + fmt_g(d.get_d()) + " (" + b_count + "/" +
             std::to_string(sample) + ")\n");
    }
  });

  static std::string x_str;
  static std::string weight_str = "riesz";
  auto* st_slope = sturmian->add_subcommand(
      "slope", "weighted average of the divisor-parity excess");
  st_slope->fallthrough();
  add_word_opts(st_slope, wopts);
  st_slope->add_option("--x", x_str, "upper end of the averaged range")->required();
  st_slope->add_option("--weight", weight_str, "riesz (exact) or literal (double)")
      ->capture_default_str();
  st_slope->callback([&] {
    MollifierWeight weight;
    if (weight_str == "riesz") {
      weight = MollifierWeight::riesz;
    } else if (weight_str == "literal") {
      weight = MollifierWeight::literal;
    } else {
      throw UsageError("unknown weight: " + weight_str);
    }
    const RotationWord w = make_word(wopts, g.precision_bits);
    const MollifiedAverage m =
        mollified_average(w, parse_exact_u64(x_str), weight, g.workers);
    if (g.fmt() == Fmt::json_fmt) {
      json j;
      j["word"] = w.describe();
      j["x"] = m.x;
      j["weight"] = weight_str;
      j["value"] = fmt_g(m.value.get_d());
      j["slope"] = fmt_g(m.slope.get_d());
      j["beta"] = fmt_g(m.beta.get_d());
      if (weight == MollifierWeight::riesz) {
        j["value_exact"] = m.value.get_str();
        j["slope_exact"] = m.slope.get_str();
      }
      g.emit_json(j);
    } else if (g.fmt() == Fmt::csv) {
      g.emit("x,value,slope,beta\n" + std::to_string(m.x) + "," + fmt_g(m.value.get_d()) +
             "," + fmt_g(m.slope.get_d()) + "," + fmt_g(m.beta.get_d()) + "\n");
    } else {
      g.emit("value " + fmt_g(m.value.get_d()) + "\nslope " + fmt_g(m.slope.get_d()) +
             "\nbeta " + fmt_g(m.beta.get_d()) + "\n");
    }
  });

  // ---- reproduce -----------------------------------------------------------
  static std::string out_dir;
  auto* reproduce = app.add_subcommand(
      "reproduce", "re-derive every published value and write the artifacts");
  reproduce->fallthrough();
  reproduce->add_option("--out", out_dir, "artifact directory")->required();
  reproduce->callback([&] {
    const ReproReport report = reproduce_all(out_dir, g.workers, g.precision_bits);
    g.emit(report.summary_text());
    if (!report.all_pass()) g.rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return g.rc;
}
