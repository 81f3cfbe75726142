#include "liecf/formal_character.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace liecf {

long long FormalCharacter::dim() const {
  long long d = 0;
  for (const auto& [w, m] : mult_) d += m;
  return d;
}

long long FormalCharacter::multiplicity(const Weight& w) const {
  auto it = mult_.find(w);
  return it == mult_.end() ? 0 : it->second;
}

void FormalCharacter::add(const Weight& w, long long m) {
  if (m == 0) return;
  auto [it, inserted] = mult_.try_emplace(w, m);
  if (!inserted) {
    it->second += m;
    if (it->second == 0) mult_.erase(it);
  }
}

std::map<Weight, long long> FormalCharacter::dominant_part() const {
  std::map<Weight, long long> out;
  for (const auto& [w, m] : mult_)
    if (std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; })) out[w] = m;
  return out;
}

namespace {

// Dominant weight multiplicities of W(lambda) for one simple component by
// Freudenthal's recursion:
//   (|lambda+rho|^2 - |mu+rho|^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1}
//        m(mu + k alpha) (mu + k alpha, alpha).
// Everything is scaled by det(C) to stay in exact integers.
std::map<Weight, long long> freudenthal_dominant(const RootDatum& datum, const Weight& lambda) {
  const int n = datum.rank();
  // Enumerate dominant mu <= lambda by saturation: repeatedly subtract
  // positive roots, keep weights whose difference from lambda stays in the
  // positive root cone.
  std::vector<Weight> pos_root_weights;
  for (const auto& r : datum.positive_roots()) pos_root_weights.push_back(datum.root_to_weight(r));

  std::set<Weight> seen{lambda};
  std::vector<Weight> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& mu : frontier) {
      for (const auto& rw : pos_root_weights) {
        Weight nu(n);
        for (int i = 0; i < n; ++i) nu[i] = mu[i] - rw[i];
        Weight dom = to_dominant(datum, nu);
        if (seen.count(dom)) continue;
        if (!datum.dominates(lambda, dom)) continue;
        seen.insert(dom);
        next.push_back(dom);
      }
    }
    frontier = std::move(next);
  }

  // Order dominant weights by decreasing coroot height.
  std::vector<Weight> doms(seen.begin(), seen.end());
  std::sort(doms.begin(), doms.end(), [&](const Weight& a, const Weight& b) {
    long long ha = datum.coroot_height(a), hb = datum.coroot_height(b);
    if (ha != hb) return ha > hb;
    return a > b;
  });

  Weight lam_rho(n);
  for (int i = 0; i < n; ++i) lam_rho[i] = lambda[i] + 1;
  const long long norm_top = datum.weight_inner(lam_rho, lam_rho);

  std::map<Weight, long long> mult;
  mult[lambda] = 1;
  for (const auto& mu : doms) {
    if (mu == lambda) continue;
    Weight mu_rho(n);
    for (int i = 0; i < n; ++i) mu_rho[i] = mu[i] + 1;
    long long denom = norm_top - datum.weight_inner(mu_rho, mu_rho);
    long long acc = 0;
    for (size_t ri = 0; ri < datum.positive_roots().size(); ++ri) {
      const Weight rw = datum.root_to_weight(datum.positive_roots()[ri]);
      Weight nu = mu;
      for (int k = 1;; ++k) {
        for (int i = 0; i < n; ++i) nu[i] += rw[i];
        Weight dom = to_dominant(datum, nu);
        auto it = mult.find(dom);
        if (it == mult.end()) {
          // Outside the saturated set once the height passes lambda's.
          if (datum.coroot_height(dom) > datum.coroot_height(lambda)) break;
          continue;
        }
        acc += it->second * datum.weight_inner(nu, rw);
      }
    }
    long long m = 2 * acc;
    if (denom == 0 || m % denom != 0) throw data_error("freudenthal recursion failed");
    m /= denom;
    if (m < 0) throw data_error("negative multiplicity in freudenthal recursion");
    if (m > 0) mult[mu] = m;
  }
  // Drop the zero-multiplicity dominant weights that saturation over-listed.
  std::map<Weight, long long> out;
  for (const auto& [w, m] : mult)
    if (m > 0) out[w] = m;
  return out;
}

FormalCharacter expand_orbits(const RootDatum& datum, const GroupShape& g,
                              const std::map<Weight, long long>& dominant) {
  FormalCharacter out(g);
  for (const auto& [w, m] : dominant)
    for (const auto& v : weyl_orbit(datum, w)) out.add(v, m);
  return out;
}

}  // namespace

FormalCharacter weyl_character(const GroupShape& g, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != g.total_rank())
    throw input_error("weight length mismatch");
  if (!is_dominant(g, lambda)) throw input_error("weyl_character requires a dominant weight");

  // Per-component characters, cached.
  static std::mutex mu;
  static std::map<std::pair<std::pair<char, int>, Weight>, FormalCharacter> cache;

  FormalCharacter result;
  size_t pos = 0;
  bool first = true;
  for (const auto& t : g.components) {
    Weight part(lambda.begin() + pos, lambda.begin() + pos + t.rank);
    pos += t.rank;
    FormalCharacter comp;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto key = std::make_pair(std::make_pair(static_cast<char>(t.family), t.rank), part);
      auto it = cache.find(key);
      if (it == cache.end()) {
        const RootDatum& datum = RootDatum::get(t);
        GroupShape single(t, 0);
        it = cache.emplace(key, expand_orbits(datum, single, freudenthal_dominant(datum, part)))
                 .first;
      }
      comp = it->second;
    }
    result = first ? std::move(comp) : outer_tensor(result, comp);
    first = false;
  }
  // Rebuild with the requested group (characteristic tag preserved).
  FormalCharacter out(g);
  for (const auto& [w, m] : result.weights()) out.add(w, m);
  return out;
}

namespace {

void factor_accumulate(unsigned long long v, int sign, std::map<unsigned long long, int>& exps) {
  for (unsigned long long d = 2; d * d <= v; ++d)
    while (v % d == 0) {
      exps[d] += sign;
      v /= d;
    }
  if (v > 1) exps[v] += sign;
}

}  // namespace

unsigned long long weyl_dim(const GroupShape& g, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != g.total_rank())
    throw input_error("weight length mismatch");
  if (!is_dominant(g, lambda)) throw input_error("weyl_dim requires a dominant weight");
  std::map<unsigned long long, int> exps;
  size_t pos = 0;
  for (const auto& t : g.components) {
    const RootDatum& datum = RootDatum::get(t);
    Weight part(lambda.begin() + pos, lambda.begin() + pos + t.rank);
    pos += t.rank;
    Weight lam_rho(t.rank);
    for (int i = 0; i < t.rank; ++i) lam_rho[i] = part[i] + 1;
    for (const auto& root : datum.positive_roots()) {
      factor_accumulate(datum.pair_with_coroot(lam_rho, root), +1, exps);
      factor_accumulate(datum.pair_with_coroot(datum.rho(), root), -1, exps);
    }
  }
  unsigned long long dim = 1;
  for (const auto& [p, e] : exps) {
    if (e < 0) throw data_error("weyl dimension formula produced a fraction");
    for (int i = 0; i < e; ++i) {
      if (dim > (~0ULL) / p) throw data_error("weyl_dim overflow");
      dim *= p;
    }
  }
  return dim;
}

FormalCharacter tensor(const FormalCharacter& a, const FormalCharacter& b) {
  if (!(a.group() == b.group())) throw input_error("tensor of characters of different groups");
  FormalCharacter out(a.group());
  for (const auto& [wa, ma] : a.weights())
    for (const auto& [wb, mb] : b.weights()) {
      Weight w(wa.size());
      for (size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out.add(w, ma * mb);
    }
  return out;
}

namespace {

// Adams operation: scale every weight by k.
FormalCharacter adams(const FormalCharacter& a, int k) {
  FormalCharacter out(a.group());
  for (const auto& [w, m] : a.weights()) {
    Weight v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[i] = k * w[i];
    out.add(v, m);
  }
  return out;
}

FormalCharacter scale(const FormalCharacter& a, long long c) {
  FormalCharacter out(a.group());
  for (const auto& [w, m] : a.weights()) out.add(w, m * c);
  return out;
}

FormalCharacter add_chars(const FormalCharacter& a, const FormalCharacter& b) {
  FormalCharacter out = a;
  for (const auto& [w, m] : b.weights()) out.add(w, m);
  return out;
}

// Direct multiset k-subset accumulation, used for small k.
FormalCharacter alt_direct(const FormalCharacter& a, int k) {
  std::vector<Weight> flat;
  for (const auto& [w, m] : a.weights())
    for (long long i = 0; i < m; ++i) flat.push_back(w);
  FormalCharacter out(a.group());
  size_t n = flat.size();
  size_t rank = a.group().total_rank();
  std::vector<size_t> idx(k);
  std::function<void(int, size_t, Weight&)> rec = [&](int depth, size_t start, Weight& acc) {
    if (depth == k) {
      out.add(acc, 1);
      return;
    }
    for (size_t i = start; i + (k - depth) <= n; ++i) {
      Weight next = acc;
      for (size_t j = 0; j < rank; ++j) next[j] += flat[i][j];
      rec(depth + 1, i + 1, next);
    }
  };
  Weight zero(rank, 0);
  rec(0, 0, zero);
  return out;
}

}  // namespace

FormalCharacter alt_power(const FormalCharacter& a, int k) {
  if (k < 0 || static_cast<long long>(k) > a.dim())
    throw input_error("alt_power degree out of range");
  if (k == 0) return trivial_character(a.group());
  if (k == 1) return a;
  if (k <= 4 && a.dim() <= 60) return alt_direct(a, k);
  // Newton recurrence over Adams operations:
  //   k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j.
  std::vector<FormalCharacter> e(k + 1);
  e[0] = trivial_character(a.group());
  for (int m = 1; m <= k; ++m) {
    FormalCharacter acc(a.group());
    for (int j = 1; j <= m; ++j) {
      FormalCharacter term = tensor(e[m - j], adams(a, j));
      acc = add_chars(acc, scale(term, (j % 2 == 1) ? 1 : -1));
    }
    FormalCharacter em(a.group());
    for (const auto& [w, c] : acc.weights()) {
      if (c % m != 0) throw data_error("alt_power recurrence failed");
      em.add(w, c / m);
    }
    e[m] = std::move(em);
  }
  return e[k];
}

FormalCharacter sym_power(const FormalCharacter& a, int k) {
  if (k < 0) throw input_error("sym_power degree out of range");
  if (k == 0) return trivial_character(a.group());
  //   k h_k = sum_{j=1..k} h_{k-j} p_j.
  std::vector<FormalCharacter> h(k + 1);
  h[0] = trivial_character(a.group());
  for (int m = 1; m <= k; ++m) {
    FormalCharacter acc(a.group());
    for (int j = 1; j <= m; ++j) acc = add_chars(acc, tensor(h[m - j], adams(a, j)));
    FormalCharacter hm(a.group());
    for (const auto& [w, c] : acc.weights()) {
      if (c % m != 0) throw data_error("sym_power recurrence failed");
      hm.add(w, c / m);
    }
    h[m] = std::move(hm);
  }
  return h[k];
}

FormalCharacter dual(const FormalCharacter& a) {
  FormalCharacter out(a.group());
  for (const auto& [w, m] : a.weights()) {
    Weight v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[i] = -w[i];
    out.add(v, m);
  }
  return out;
}

FormalCharacter subtract(const FormalCharacter& a, const FormalCharacter& b) {
  if (!(a.group() == b.group())) throw input_error("subtract of characters of different groups");
  FormalCharacter out = a;
  for (const auto& [w, m] : b.weights()) {
    if (out.multiplicity(w) < m)
      throw data_error("subtract: negative multiplicity at " + weight_to_string(w));
    out.add(w, -m);
  }
  return out;
}

FormalCharacter trivial_character(const GroupShape& g) {
  FormalCharacter out(g);
  out.add(Weight(g.total_rank(), 0), 1);
  return out;
}

FormalCharacter outer_tensor(const FormalCharacter& a, const FormalCharacter& b, int p) {
  std::vector<SimpleType> comps = a.group().components;
  comps.insert(comps.end(), b.group().components.begin(), b.group().components.end());
  FormalCharacter out(GroupShape(std::move(comps), p));
  for (const auto& [wa, ma] : a.weights())
    for (const auto& [wb, mb] : b.weights()) {
      Weight w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ma * mb);
    }
  return out;
}

bool is_weyl_invariant(const FormalCharacter& a) {
  // Check multiplicity constancy under simple reflections.
  const auto& g = a.group();
  size_t pos = 0;
  for (const auto& t : g.components) {
    const auto& c = RootDatum::get(t).cartan();
    for (int i = 0; i < t.rank; ++i) {
      for (const auto& [w, m] : a.weights()) {
        Weight v = w;
        int vi = w[pos + i];
        for (int k = 0; k < t.rank; ++k) v[pos + k] -= vi * c[k][i];
        if (a.multiplicity(v) != m) return false;
      }
    }
    pos += t.rank;
  }
  return true;
}

}  // namespace liecf
