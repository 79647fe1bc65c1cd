#pragma once

// Exact certification that a truncated coefficient system forces every
// coefficient of total degree <= M-4 to vanish.

#include <cornerscat/certify/truncated_system.hpp>
#include <cornerscat/exact/elimination.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cornerscat::certify {

enum class Verdict { certified, refuted, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct WitnessEntry {
  CoefficientIndex index;
  BigRational value;
};

struct PairOutcome {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  bool vanishing = true;
};

struct CertificateReport {
  int order = 0;
  std::vector<WavenumberPair> pairs;
  std::size_t n_unknowns = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  int guaranteed_vanishing_order = 0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<PairOutcome> per_pair;
  std::optional<std::vector<WitnessEntry>> witness;
};

/// Default pairs: fixed, generic-looking rationals (no shared structure).
inline std::vector<WavenumberPair> default_pairs() {
  using exact::BigRational;
  return {
      {BigRational(1), BigRational(2)},
      {BigRational(3), BigRational(5)},
      {BigRational(7, 2), BigRational(1, 3)},
      {BigRational(-11, 4), BigRational(13, 7)},
      {BigRational(19, 5), BigRational(-2, 9)},
  };
}

/// For each pair: exact nullspace of the truncated system, then a check that
/// every basis vector is zero on all coordinates of degree <= M-4.
/// Pairs are generic, so differing nullities across pairs mark the run
/// inconclusive rather than certified.
inline CertificateReport certify_vanishing(int order, const std::vector<WavenumberPair>& pairs) {
  if (order < 6) throw BadOrder("certify_vanishing: order must be >= 6, got " + std::to_string(order));
  if (pairs.empty()) throw std::invalid_argument("certify_vanishing: no wavenumber pairs given");

  CertificateReport rep;
  rep.order = order;
  rep.pairs = pairs;
  rep.n_unknowns = count_unknowns(order);
  rep.guaranteed_vanishing_order = order - 4;

  bool all_vanish = true;
  for (const auto& pair : pairs) {
    const auto sys = build_truncated_system(order, pair);
    const auto red = exact::rref(sys.matrix);
    const auto kernel = exact::nullspace_basis(red, sys.columns.size());
    PairOutcome out{red.rank, kernel.size(), true};
    for (const auto& v : kernel) {
      bool bad = false;
      for (std::size_t c = 0; c < v.size() && !bad; ++c)
        bad = !v[c].is_zero() && sys.columns[c].degree() <= rep.guaranteed_vanishing_order;
      if (bad) {
        out.vanishing = false;
        if (!rep.witness) {
          std::vector<WitnessEntry> w;
          for (std::size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) w.push_back({sys.columns[c], v[c]});
          rep.witness = std::move(w);
        }
        break;
      }
    }
    all_vanish = all_vanish && out.vanishing;
    rep.per_pair.push_back(out);
  }

  rep.rank = rep.per_pair.front().rank;
  rep.nullity = rep.per_pair.front().nullity;
  bool uniform = true;
  for (const auto& p : rep.per_pair) uniform = uniform && p.rank == rep.rank;
  if (!all_vanish)
    rep.verdict = Verdict::refuted;
  else
    rep.verdict = uniform ? Verdict::certified : Verdict::inconclusive;
  return rep;
}

inline nlohmann::json to_json(const CertificateReport& rep) {
  nlohmann::json j;
  j["M"] = rep.order;
  // Integers that do not fit in 64 bits are written as decimal strings.
  auto integer = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  auto pairs = nlohmann::json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back({integer(p.q1().numerator()), integer(p.q1().denominator()), integer(p.q2().numerator()),
                     integer(p.q2().denominator())});
  j["pairs"] = pairs;
  j["n_unknowns"] = rep.n_unknowns;
  j["rank"] = rep.rank;
  j["nullity"] = rep.nullity;
  j["guaranteed_vanishing_order"] = rep.guaranteed_vanishing_order;
  j["verdict"] = to_string(rep.verdict);
  if (rep.witness) {
    auto w = nlohmann::json::array();
    for (const auto& e : *rep.witness)
      w.push_back({{"j", e.index.j}, {"n", e.index.n}, {"m", e.index.m}, {"value", e.value.to_string()}});
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace cornerscat::certify
