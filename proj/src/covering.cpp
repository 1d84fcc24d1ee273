#include "doi2/covering.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

#include "doi2/crt.hpp"
#include "doi2/primes.hpp"
#include "parallel_util.hpp"

namespace doi2 {

void CoveringState::validate() const {
  for (const auto& [p, off] : placements) {
    if (!is_prime_u64(p)) throw std::invalid_argument("placement key is not prime");
    if (off >= p) throw std::invalid_argument("offset must be smaller than its prime");
    if (excluded.count(p)) throw std::invalid_argument("placement uses an excluded prime");
  }
}

CoverReport is_covered(const CoveringState& state) {
  state.validate();
  std::vector<char> covered(state.length, 0);
  for (const auto& [p, off] : state.placements) {
    for (uint64_t b = off; b < state.length; b += p) covered[b] = 1;
  }
  CoverReport report;
  for (uint64_t b = 0; b < state.length; ++b) {
    if (!covered[b]) report.uncovered.push_back(b);
  }
  report.complete = report.uncovered.empty();
  return report;
}

EffectiveReport is_effective(const CoveringState& state) {
  state.validate();
  EffectiveReport report;
  for (const auto& [p, off] : state.placements) {
    const uint64_t pearls =
        off < state.length ? (state.length - 1 - off) / p + 1 : 0;
    if (pearls < 2) report.violators.push_back(p);
  }
  report.effective = report.violators.empty();
  return report;
}

CoveringState mirror(const CoveringState& state) {
  CoveringState out;
  out.length = state.length;
  out.excluded = state.excluded;
  for (const auto& [p, off] : state.placements) {
    const long long reflected = static_cast<long long>(state.length) - 1 -
                                static_cast<long long>(off);
    const long long q = static_cast<long long>(p);
    out.placements[p] = static_cast<uint64_t>(((reflected % q) + q) % q);
  }
  return out;
}

CoveringState minimal_covering17() {
  CoveringState s;
  s.length = 17;
  s.placements = {{2, 0}, {3, 1}, {5, 0}, {7, 2}, {11, 0}, {13, 3}};
  return s;
}

Instantiation instantiate(const CoveringState& state) {
  state.validate();
  if (!is_covered(state).complete) {
    throw std::invalid_argument("state is not a complete covering");
  }
  if (!is_effective(state).effective) {
    throw std::invalid_argument("state is not an effective covering");
  }
  CongruenceSystem sys;
  for (const auto& [p, off] : state.placements) {
    // Box `off` holds a pearl of p, so p | a + off.
    sys.congruences.push_back({mpz_class((p - off % p) % p), mpz_class(p)});
  }
  CrtSolution sol = crt_solve(sys);
  Instantiation inst;
  inst.modulus = sol.modulus;
  inst.a = sol.residue == 0 ? sol.modulus : sol.residue;  // least positive
  return inst;
}

namespace {

// Depth-first enumeration of every complete-and-effective assignment.
// Primes are fixed in descending order; each either takes one of its
// effective offsets or stays unused.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(uint64_t length, const std::set<uint64_t>& excluded)
      : len_(length), excluded_(excluded), cover_(length, 0), zero_boxes_(length) {
    if (len_ >= 3) {
      PrimeTable t = sieve_primes(len_ - 1);
      for (auto it = t.primes.rbegin(); it != t.primes.rend(); ++it) {
        if (!excluded_.count(*it)) primes_.push_back(*it);
      }
    }
  }

  // Options of the top prime: its effective offsets, then -1 for "unused".
  std::vector<long long> top_options() const {
    std::vector<long long> opts;
    if (!primes_.empty()) {
      for (uint64_t off = 0; off <= max_offset(primes_[0]); ++off) {
        opts.push_back(static_cast<long long>(off));
      }
    }
    opts.push_back(-1);
    return opts;
  }

  void run_top_option(long long opt, std::vector<CoveringState>* out) {
    if (primes_.empty()) {
      if (zero_boxes_ == 0) record(out);
      return;
    }
    if (opt >= 0) {
      place(primes_[0], static_cast<uint64_t>(opt));
      dfs(1, out);
      unplace(primes_[0], static_cast<uint64_t>(opt));
    } else {
      dfs(1, out);
    }
  }

 private:
  uint64_t max_offset(uint64_t p) const { return std::min(p - 1, len_ - 1 - p); }

  void place(uint64_t p, uint64_t off) {
    stack_.emplace_back(p, off);
    for (uint64_t b = off; b < len_; b += p) {
      if (cover_[b]++ == 0) --zero_boxes_;
    }
  }

  void unplace(uint64_t p, uint64_t off) {
    stack_.pop_back();
    for (uint64_t b = off; b < len_; b += p) {
      if (--cover_[b] == 0) ++zero_boxes_;
    }
  }

  void record(std::vector<CoveringState>* out) const {
    CoveringState s;
    s.length = len_;
    s.excluded = excluded_;
    for (const auto& [p, off] : stack_) s.placements[p] = off;
    out->push_back(std::move(s));
  }

  void dfs(std::size_t i, std::vector<CoveringState>* out) {
    if (zero_boxes_ > 0) {
      // Prune: some remaining prime must be able to cover the first hole.
      uint64_t hole = 0;
      while (cover_[hole] != 0) ++hole;
      bool reachable = false;
      for (std::size_t j = i; j < primes_.size() && !reachable; ++j) {
        reachable = hole % primes_[j] <= max_offset(primes_[j]);
      }
      if (!reachable) return;
    }
    if (i == primes_.size()) {
      if (zero_boxes_ == 0) record(out);
      return;
    }
    const uint64_t p = primes_[i];
    for (uint64_t off = 0; off <= max_offset(p); ++off) {
      place(p, off);
      dfs(i + 1, out);
      unplace(p, off);
    }
    dfs(i + 1, out);  // p unused
  }

  uint64_t len_;
  std::set<uint64_t> excluded_;
  std::vector<uint64_t> primes_;
  std::vector<uint16_t> cover_;
  uint64_t zero_boxes_;
  std::vector<std::pair<uint64_t, uint64_t>> stack_;
};

// Greedy backtracking: cover the first hole, preferring the prime whose
// forced placement covers the most still-uncovered boxes (ties: smallest
// prime), recurse, undo on failure.  Plain smallest-first starves the tail
// of long windows; most-new-coverage completes length 1300 with prime 3
// barred without ever backtracking.
std::optional<CoveringState> first_found_covering(uint64_t length,
                                                  const std::set<uint64_t>& excluded) {
  if (length == 0) {
    CoveringState s;
    s.excluded = excluded;
    return s;
  }
  std::vector<uint64_t> primes;
  if (length >= 3) {
    PrimeTable t = sieve_primes(length - 1);
    for (uint64_t p : t.primes) {
      if (!excluded.count(p)) primes.push_back(p);
    }
  }
  std::vector<uint32_t> cover(length, 0);
  std::vector<char> used(primes.size(), 0);
  std::vector<std::pair<uint64_t, uint64_t>> placed;
  uint64_t budget = 100'000'000;

  std::function<bool(uint64_t)> rec = [&](uint64_t from) -> bool {
    uint64_t hole = from;
    while (hole < length && cover[hole] != 0) ++hole;
    if (hole == length) return true;
    std::vector<std::pair<uint64_t, std::size_t>> order;  // (-new boxes, index)
    for (std::size_t k = 0; k < primes.size(); ++k) {
      if (used[k]) continue;
      const uint64_t q = primes[k];
      if (q > hole && hole + q > length - 1) continue;  // no effective offset hits the hole
      uint64_t fresh = 0;
      for (uint64_t b = hole % q; b < length; b += q) fresh += cover[b] == 0;
      order.emplace_back(~fresh, k);  // descending coverage, ascending prime on ties
    }
    std::sort(order.begin(), order.end());
    for (const auto& [neg_fresh, k] : order) {
      const uint64_t q = primes[k];
      if (budget-- == 0) throw std::runtime_error("first_found search budget exhausted");
      const uint64_t off = hole % q;
      used[k] = 1;
      placed.emplace_back(q, off);
      for (uint64_t b = off; b < length; b += q) ++cover[b];
      if (rec(hole + 1)) return true;
      for (uint64_t b = off; b < length; b += q) --cover[b];
      placed.pop_back();
      used[k] = 0;
    }
    return false;
  };

  if (!rec(0)) return std::nullopt;
  CoveringState s;
  s.length = length;
  s.excluded = excluded;
  for (const auto& [p, off] : placed) s.placements[p] = off;
  return s;
}

}  // namespace

std::vector<CoveringState> search_complete_coverings(uint64_t length,
                                                     const std::set<uint64_t>& excluded,
                                                     SearchMode mode, unsigned workers) {
  if (mode == SearchMode::first_found) {
    std::vector<CoveringState> out;
    if (auto s = first_found_covering(length, excluded)) out.push_back(std::move(*s));
    return out;
  }

  if (length > 24) {
    throw std::invalid_argument("length too large for exhaustive search; use first_found mode");
  }
  ExhaustiveSearch probe(length, excluded);
  const std::vector<long long> options = probe.top_options();

  std::vector<std::vector<CoveringState>> found(std::max(1u, workers));
  detail::split_indices(options.size(), workers, [&](unsigned w, std::size_t b, std::size_t e) {
    ExhaustiveSearch search(length, excluded);
    for (std::size_t i = b; i < e; ++i) {
      search.run_top_option(options[i], &found[w]);
    }
  });

  std::vector<CoveringState> out;
  for (auto& chunk : found) {
    for (auto& s : chunk) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const CoveringState& a, const CoveringState& b) {
    return a.placements < b.placements;
  });
  return out;
}

ExtensionTrace fcfs_extend(const CoveringState& start, uint64_t target_box,
                           ExtendSide side, AvailabilityRule rule) {
  start.validate();
  if (start.length == 0) throw std::invalid_argument("cannot extend an empty window");
  if (!is_covered(start).complete) {
    throw std::invalid_argument("state is not a complete covering");
  }
  if (!is_effective(start).effective) {
    throw std::invalid_argument("state is not an effective covering");
  }

  const uint64_t sieve_bound = 2 * target_box + start.length + 64;
  PrimeTable table = sieve_primes(sieve_bound);

  // Residue-class view of every placement: prime q covers boxes = anchor mod q.
  std::vector<std::pair<uint64_t, uint64_t>> placed;  // (prime, residue)
  std::set<uint64_t> used;
  for (const auto& [p, off] : start.placements) {
    placed.emplace_back(p, off);
    used.insert(p);
  }

  const auto covered = [&](long long b) {
    for (const auto& [q, r] : placed) {
      const long long qq = static_cast<long long>(q);
      if (((b % qq) + qq) % qq == static_cast<long long>(r)) return true;
    }
    return false;
  };

  ExtensionTrace trace;
  trace.lo = 0;
  trace.hi = static_cast<long long>(start.length) - 1;

  const auto count_available = [&](uint64_t max_prime) {
    uint64_t n = 0;
    for (uint64_t p : table.primes) {
      if (p > max_prime) break;
      if (!used.count(p) && !start.excluded.count(p)) ++n;
    }
    return n;
  };

  // Advance the window one box in the given direction, placing a pearl if
  // the new box is a barrier.  Returns false when no prime is available.
  const auto advance = [&](int dir) {
    const long long b = dir > 0 ? trace.hi + 1 : trace.lo - 1;
    if (!covered(b)) {
      const uint64_t window_len =
          static_cast<uint64_t>(dir > 0 ? b - trace.lo : trace.hi - b) + 1;
      const uint64_t max_prime =
          rule == AvailabilityRule::window ? window_len - 1 : window_len / 2;
      uint64_t chosen = 0;
      for (uint64_t p : table.primes) {
        if (p > max_prime) break;
        if (!used.count(p) && !start.excluded.count(p)) {
          chosen = p;
          break;
        }
      }
      if (chosen == 0) {
        trace.stuck = true;
        trace.stuck_box = b;
        return false;
      }
      const long long qq = static_cast<long long>(chosen);
      placed.emplace_back(chosen, static_cast<uint64_t>(((b % qq) + qq) % qq));
      used.insert(chosen);
      trace.steps.push_back({b, chosen, count_available(max_prime)});
    }
    (dir > 0 ? trace.hi : trace.lo) = b;
    return true;
  };

  const long long goal = static_cast<long long>(target_box);
  bool to_right = true;
  while (true) {
    const bool need_right = (side != ExtendSide::left) && trace.hi < goal;
    const bool need_left = (side != ExtendSide::right) && trace.lo > -goal;
    if (!need_right && !need_left) break;
    int dir;
    if (need_right && need_left) {
      dir = to_right ? 1 : -1;
      to_right = !to_right;
    } else {
      dir = need_right ? 1 : -1;
    }
    if (!advance(dir)) break;
  }

  // Every placement must still be effective in the final window.
  for (const auto& [q, r] : placed) {
    const long long qq = static_cast<long long>(q);
    const long long first =
        trace.lo + ((static_cast<long long>(r) - trace.lo) % qq + qq) % qq;
    const long long pearls = first <= trace.hi ? (trace.hi - first) / qq + 1 : 0;
    if (pearls < 2 && !trace.stuck) {
      throw std::logic_error("extension produced an ineffective placement");
    }
  }
  return trace;
}

bool verify_run(const mpz_class& a, uint64_t length, const std::set<uint64_t>& excluded) {
  std::vector<char> linked(length, 0);
  std::vector<mpz_class> elems;
  elems.reserve(length);
  for (uint64_t i = 0; i < length; ++i) elems.push_back(a + i);

  // Two run elements share a prime only if it divides their distance, so
  // gcd(element, distance) sees every shared prime without factoring.
  for (uint64_t d = 1; d < length; ++d) {
    for (uint64_t i = 0; i + d < length; ++i) {
      if (linked[i] && linked[i + d]) continue;
      uint64_t g = mpz_gcd_ui(nullptr, elems[i].get_mpz_t(), d);
      for (uint64_t q : excluded) {
        while (q > 1 && g % q == 0) g /= q;
      }
      if (g > 1) linked[i] = linked[i + d] = 1;
    }
  }
  return std::all_of(linked.begin(), linked.end(), [](char c) { return c != 0; });
}

}  // namespace doi2
