#pragma once

// Jantzen sum formula oracle for validating the modular database.
//
// For a Weyl module W(lambda) at characteristic p the Jantzen filtration
// satisfies
//   sum_{i>0} ch J^i = sum_{alpha>0} sum_{0<mp<(lambda+rho,alpha^vee)}
//                         nu_p(mp) chi(lambda - ((lambda+rho,alpha^vee)-mp) alpha)
// where chi is the Euler characteristic (signed Weyl character after the dot
// action).  The sum vanishes iff W(lambda) is irreducible; decomposing it
// into irreducible characters gives the exact support of the composition
// factors below lambda and upper bounds for their multiplicities (exact when
// the decomposition is multiplicity free, since then every factor lies in
// J^1 only).

#include <map>

#include "liecf/modular.hpp"

namespace liecf::testing {

// Signed dominant resolution of the dot action: chi(mu) = sign * ch W(dom),
// sign = 0 when mu + rho hits a wall.
inline std::pair<Weight, int> dot_dominant(const RootDatum& datum, Weight mu) {
  int n = datum.rank();
  for (int i = 0; i < n; ++i) mu[i] += 1;
  int sign = 1;
  const auto& c = datum.cartan();
  while (true) {
    int i = -1;
    for (int k = 0; k < n; ++k) {
      if (mu[k] == 0) return {Weight(), 0};
      if (mu[k] < 0) { i = k; break; }
    }
    if (i < 0) break;
    int mi = mu[i];
    for (int k = 0; k < n; ++k) mu[k] -= mi * c[k][i];
    sign = -sign;
  }
  for (int i = 0; i < n; ++i) mu[i] -= 1;
  return {mu, sign};
}

inline std::map<Weight, long long> jantzen_sum_weyl_coeffs(SimpleType t, int p,
                                                           const Weight& lambda) {
  const RootDatum& datum = RootDatum::get(t);
  int n = datum.rank();
  Weight lam_rho(n);
  for (int i = 0; i < n; ++i) lam_rho[i] = lambda[i] + 1;
  std::map<Weight, long long> coeffs;
  for (const auto& root : datum.positive_roots()) {
    int pairing = datum.pair_with_coroot(lam_rho, root);
    Weight root_wt = datum.root_to_weight(root);
    for (int mp = p; mp < pairing; mp += p) {
      int val = 0;
      for (int x = mp; x % p == 0; x /= p) ++val;
      Weight mu(n);
      for (int i = 0; i < n; ++i) mu[i] = lambda[i] - (pairing - mp) * root_wt[i];
      auto [dom, sign] = dot_dominant(datum, mu);
      if (sign == 0) continue;
      coeffs[dom] += static_cast<long long>(sign) * val;
      if (coeffs[dom] == 0) coeffs.erase(dom);
    }
  }
  return coeffs;
}

struct DerivedFactors {
  std::map<Weight, long long> factors;  // includes lambda itself
  bool exact = true;   // multiplicities certain (not just upper bounds)
  bool trusted = false;  // ambiguous case resolved against the reference db
};

// Derives composition factors mechanically, consulting a reference database
// only in the (rare) ambiguous cases, which it then consistency-checks.
class JantzenOracle {
 public:
  JantzenOracle(SimpleType t, int p, const ModularDB* reference = nullptr)
      : type_(t), p_(p), reference_(reference) {
    db_.set_mode(ModularDB::Mode::Permissive);
  }

  const DerivedFactors& factors_of_weyl(const Weight& lambda) {
    auto it = memo_.find(lambda);
    if (it != memo_.end()) return it->second;
    // Reserve the slot to guard against accidental cycles.
    auto coeffs = jantzen_sum_weyl_coeffs(type_, p_, lambda);
    GroupShape g(type_, p_);
    DerivedFactors out;
    out.factors[lambda] = 1;
    if (!coeffs.empty()) {
      FormalCharacter jsf(g);
      for (const auto& [mu, c] : coeffs) {
        FormalCharacter wc = weyl_character(g, mu);
        for (const auto& [w, m] : wc.weights()) jsf.add(w, m * c);
      }
      for (const auto& [w, m] : jsf.weights())
        if (m < 0) throw data_error("jantzen sum is not a character for " + weight_to_string(lambda));
      FactorMultiset layers = decompose_with_self(jsf);
      bool mult_free = true;
      for (const auto& [w, m] : layers.factors) {
        out.factors[w] = m;
        if (m != 1) mult_free = false;
      }
      out.exact = mult_free;
      if (!mult_free && reference_) {
        const auto* ref = reference_->find(type_, p_, lambda);
        if (ref) {
          // Consistency: same support, reference multiplicities within the
          // layer bounds.
          std::map<Weight, long long> refmap;
          for (const auto& [w, m] : *ref) refmap[w] += m;
          if (refmap.count(lambda) == 0 || refmap[lambda] != 1)
            throw data_error("reference entry malformed for " + weight_to_string(lambda));
          for (const auto& [w, m] : refmap) {
            if (w == lambda) continue;
            auto lit = out.factors.find(w);
            if (lit == out.factors.end() || m > lit->second)
              throw data_error("reference entry outside jantzen bounds for " +
                               weight_to_string(lambda));
          }
          for (const auto& [w, m] : out.factors) {
            (void)m;
            if (w != lambda && !refmap.count(w))
              throw data_error("reference entry missing factor " + weight_to_string(w) +
                               " for " + weight_to_string(lambda));
          }
          out.factors = std::move(refmap);
          out.trusted = true;
        }
      }
    }
    std::vector<std::pair<Weight, long long>> entry;
    for (const auto& [w, m] : out.factors) entry.emplace_back(w, m);
    db_.add_entry(type_, p_, lambda, entry);
    return memo_.emplace(lambda, std::move(out)).first->second;
  }

  const ModularDB& db() const { return db_; }

  // Every derived reducible entry touched so far.
  std::vector<Weight> reducible_labels() const {
    std::vector<Weight> out;
    for (const auto& [w, f] : memo_)
      if (f.factors.size() > 1 || f.factors.begin()->second != 1) out.push_back(w);
    return out;
  }

 private:
  void ensure_known(const Weight& label) {
    for (const auto& [part, r] : steinberg_split(label, p_)) {
      (void)r;
      factors_of_weyl(part);
    }
  }

  FactorMultiset decompose_with_self(const FormalCharacter& a) {
    FactorMultiset out(a.group());
    FormalCharacter rem = a;
    while (!rem.empty()) {
      const Weight* best = nullptr;
      long long best_h = 0;
      for (const auto& [w, m] : rem.weights()) {
        long long h = coroot_height(a.group(), w);
        if (!best || h > best_h || (h == best_h && w > *best)) {
          best = &w;
          best_h = h;
        }
      }
      Weight lambda = *best;
      ensure_known(lambda);
      long long m = rem.multiplicity(lambda);
      FormalCharacter ic = irr_char(a.group(), lambda, p_, db_);
      for (long long i = 0; i < m; ++i) rem = subtract(rem, ic);
      out.add(lambda, m);
    }
    return out;
  }

  SimpleType type_;
  int p_;
  const ModularDB* reference_;
  ModularDB db_;
  std::map<Weight, DerivedFactors> memo_;
};

}  // namespace liecf::testing
