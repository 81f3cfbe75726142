#pragma once

// Brute-force weight multiplicities through the Kostant partition function:
//   m_lambda(mu) = sum_{w in W} (-1)^{l(w)} P(w(lambda+rho) - (mu+rho))
// with P counting expressions as non-negative integer combinations of
// positive roots.  Independent of the Freudenthal path in the library.

#include <map>

#include "liecf/root_datum.hpp"

namespace liecf::testing {

class KostantOracle {
 public:
  explicit KostantOracle(SimpleType t) : datum_(RootDatum::get(t)) {
    for (const auto& r : datum_.positive_roots())
      root_weights_.push_back(datum_.root_to_weight(r));
    // Enumerate the Weyl group on the regular orbit of rho, tracking signs.
    std::map<Weight, int> sign{{datum_.rho(), +1}};
    std::vector<Weight> frontier{datum_.rho()};
    const auto& c = datum_.cartan();
    int n = datum_.rank();
    while (!frontier.empty()) {
      std::vector<Weight> next;
      for (const auto& v : frontier) {
        for (int i = 0; i < n; ++i) {
          Weight r = v;
          for (int k = 0; k < n; ++k) r[k] -= v[i] * c[k][i];
          if (!sign.count(r)) {
            sign[r] = -sign[v];
            next.push_back(r);
          }
        }
      }
      frontier = std::move(next);
    }
    rho_orbit_ = std::move(sign);
  }

  // P(v) for v in fundamental coordinates.
  long long partition(const Weight& v) {
    auto it = pmemo_.find(v);
    if (it != pmemo_.end()) return it->second;
    long long total = count(v, 0);
    pmemo_[v] = total;
    return total;
  }

  long long multiplicity(const Weight& lambda, const Weight& mu) {
    int n = datum_.rank();
    long long acc = 0;
    Weight lam_rho(n), mu_rho(n);
    for (int i = 0; i < n; ++i) {
      lam_rho[i] = lambda[i] + 1;
      mu_rho[i] = mu[i] + 1;
    }
    // w(lambda+rho) realised by acting on the rho-orbit: w(rho) determines w;
    // recover w(lambda+rho) by replaying the reflections.  Simpler: walk the
    // orbit of lambda+rho in lockstep with rho's.
    for (const auto& [wrho, sgn] : rho_orbit_) {
      Weight wl = transport(lam_rho, wrho);
      Weight arg(n);
      for (int i = 0; i < n; ++i) arg[i] = wl[i] - mu_rho[i];
      acc += sgn * partition(arg);
    }
    return acc;
  }

 private:
  // Apply to v the Weyl element sending rho to wrho (found by undoing
  // reflections).
  Weight transport(const Weight& v, Weight wrho) {
    const auto& c = datum_.cartan();
    int n = datum_.rank();
    std::vector<int> word;
    while (wrho != datum_.rho()) {
      int i = -1;
      for (int k = 0; k < n; ++k)
        if (wrho[k] < 0) { i = k; break; }
      if (i < 0) throw data_error("transport failed");
      word.push_back(i);
      int wi = wrho[i];
      for (int k = 0; k < n; ++k) wrho[k] -= wi * c[k][i];
    }
    // wrho = s_{i_m} ... s_{i_1} rho was undone by applying s_{i_1}.. in
    // order; w = s_{i_1} s_{i_2} ... applied in reverse to rebuild.
    Weight out = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      int i = *it;
      int oi = out[i];
      for (int k = 0; k < n; ++k) out[k] -= oi * c[k][i];
    }
    return out;
  }

  long long count(Weight v, size_t from) {
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) return 1;
    if (from >= root_weights_.size()) return 0;
    // bound the coefficient of root 'from' by trying until dominance fails
    long long total = 0;
    Weight cur = v;
    for (int k = 0;; ++k) {
      if (k > 0) {
        bool any = false;
        for (size_t i = 0; i < cur.size(); ++i) {
          cur[i] -= root_weights_[from][i];
        }
        (void)any;
        // quick infeasibility cut: coroot height must stay non-negative
        if (datum_.coroot_height(cur) < 0) break;
      }
      total += count(cur, from + 1);
    }
    return total;
  }

  const RootDatum& datum_;
  std::vector<Weight> root_weights_;
  std::map<Weight, int> rho_orbit_;
  std::map<Weight, long long> pmemo_;
};

}  // namespace liecf::testing
