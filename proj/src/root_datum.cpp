#include "liecf/root_datum.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace liecf {

namespace {

// cartan[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i,alpha_j)/(alpha_i,alpha_i).
void fill_cartan(SimpleType t, std::vector<std::vector<int>>& c, std::vector<int>& d) {
  int n = t.rank;
  c.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
  d.assign(n, 1);
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;  // alpha_n short
      for (int i = 0; i < n - 1; ++i) d[i] = 2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;  // alpha_n long
      d[n - 1] = 2;
      break;
    case Family::D:
      for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      // Bourbaki: 1-3-4-5-6(-7-8) path, 2 attached to 4.
      link(0, 2);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      link(1, 3);
      break;
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      c[2][1] = -2;  // alpha_3, alpha_4 short
      d[0] = d[1] = 2;
      break;
    case Family::G:
      // alpha_1 short, alpha_2 long; highest short root = lambda_1.
      c[0][1] = -3;
      c[1][0] = -1;
      d[1] = 3;
      break;
  }
}

// Fraction-free Bareiss determinant + adjugate for small integer matrices.
long long int_det(std::vector<std::vector<long long>> m) {
  int n = static_cast<int>(m.size());
  long long det = 1;
  long long prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { s = i; break; }
      if (s < 0) return 0;
      std::swap(m[k], m[s]);
      det = -det;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return det * m[n - 1][n - 1];
}

}  // namespace

RootDatum::RootDatum(SimpleType type) : type_(type), rank_(type.rank) {
  fill_cartan(type_, cartan_, symmetrizers_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (symmetrizers_[i] * cartan_[i][j] != symmetrizers_[j] * cartan_[j][i])
        throw data_error("cartan matrix not symmetrizable for " + type_.name());

  // Generate positive roots by closing the simple roots under root strings.
  std::set<std::vector<int>> pos;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> e(rank_, 0);
    e[i] = 1;
    pos.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& beta : frontier) {
      Weight bw = root_to_weight(beta);
      for (int i = 0; i < rank_; ++i) {
        // beta + alpha_i is a root iff q - <beta, alpha_i^vee> > 0 where q is
        // the length of the alpha_i-string below beta inside the positive
        // roots (walking below a simple root leaves the positive cone, and
        // then the string through negative roots contributes via bw[i] < 0
        // never happening for generated beta).
        int q = 0;
        std::vector<int> down = beta;
        while (true) {
          down[i] -= 1;
          if (pos.count(down)) { ++q; continue; }
          break;
        }
        if (q - bw[i] > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (!pos.count(up)) {
            pos.insert(up);
            next.push_back(up);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  positive_roots_.assign(pos.begin(), pos.end());
  std::sort(positive_roots_.begin(), positive_roots_.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              long long ha = std::accumulate(a.begin(), a.end(), 0LL);
              long long hb = std::accumulate(b.begin(), b.end(), 0LL);
              if (ha != hb) return ha < hb;
              return a < b;
            });
  for (const auto& r : positive_roots_) {
    root_set_.insert(r);
    std::vector<int> neg(r.size());
    for (size_t k = 0; k < r.size(); ++k) neg[k] = -r[k];
    root_set_.insert(neg);
  }

  rho_.assign(rank_, 1);

  // det(C) and det(C) * C^{-1} via cofactors of the transpose.
  std::vector<std::vector<long long>> m(rank_, std::vector<long long>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) m[i][j] = cartan_[i][j];
  det_ = int_det(m);
  cartan_adjugate_.assign(rank_, std::vector<long long>(rank_, 0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      std::vector<std::vector<long long>> minor;
      for (int r = 0; r < rank_; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (int cidx = 0; cidx < rank_; ++cidx) {
          if (cidx == i) continue;
          row.push_back(cartan_[r][cidx]);
        }
        minor.push_back(std::move(row));
      }
      long long cof = minor.empty() ? 1 : int_det(minor);
      if ((i + j) % 2) cof = -cof;
      cartan_adjugate_[i][j] = cof;  // adj(C)[i][j] = cof(C)[j][i]
    }
}

Weight RootDatum::root_to_weight(const std::vector<int>& root) const {
  Weight w(rank_, 0);
  for (int k = 0; k < rank_; ++k)
    for (int j = 0; j < rank_; ++j) w[k] += cartan_[k][j] * root[j];
  return w;
}

bool RootDatum::is_root(const std::vector<int>& root) const { return root_set_.count(root) > 0; }

int RootDatum::root_half_norm(const std::vector<int>& root) const {
  long long n2 = 0;
  for (int j = 0; j < rank_; ++j)
    for (int k = 0; k < rank_; ++k)
      n2 += static_cast<long long>(root[j]) * root[k] * symmetrizers_[j] * cartan_[j][k];
  // n2 = (beta,beta); half norm in the d-normalisation is (beta,beta)/2.
  if (n2 % 2 != 0) throw data_error("odd root norm");
  return static_cast<int>(n2 / 2);
}

int RootDatum::pair_with_coroot(const Weight& w, const std::vector<int>& root) const {
  // beta^vee = sum_j root_j d_j / d_beta * alpha_j^vee
  long long dbeta = root_half_norm(root);
  long long acc = 0;
  for (int j = 0; j < rank_; ++j) acc += static_cast<long long>(root[j]) * symmetrizers_[j] * w[j];
  if (acc % dbeta != 0) throw data_error("non-integral coroot pairing");
  return static_cast<int>(acc / dbeta);
}

long long RootDatum::weight_inner(const Weight& x, const Weight& y) const {
  // (x, y) = sum_j d_j x_j (root coords of y)_j; root coords = C^{-1} y.
  // Scaled by det(C) to stay integral.
  long long acc = 0;
  for (int j = 0; j < rank_; ++j) {
    long long yj = 0;
    for (int k = 0; k < rank_; ++k) yj += cartan_adjugate_[j][k] * y[k];
    acc += static_cast<long long>(symmetrizers_[j]) * x[j] * yj;
  }
  return acc;
}

long long RootDatum::coroot_height(const Weight& w) const {
  long long acc = 0;
  for (int j = 0; j < rank_; ++j)
    for (int k = 0; k < rank_; ++k) acc += cartan_adjugate_[j][k] * w[k];
  // det may be computed with either sign convention; keep height covariant.
  return det_ > 0 ? acc : -acc;
}

bool RootDatum::dominates(const Weight& lambda, const Weight& mu) const {
  for (int j = 0; j < rank_; ++j) {
    long long c = 0;
    for (int k = 0; k < rank_; ++k) c += cartan_adjugate_[j][k] * (lambda[k] - mu[k]);
    if (det_ < 0) c = -c;
    long long d = det_ > 0 ? det_ : -det_;
    if (c < 0 || c % d != 0) return false;
  }
  return true;
}

const RootDatum& RootDatum::get(SimpleType type) {
  static std::mutex mu;
  static std::map<std::pair<char, int>, std::unique_ptr<RootDatum>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<char>(type.family), type.rank);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RootDatum>(type)).first;
  return *it->second;
}

RootDatum build_root_datum(SimpleType type) { return RootDatum(type); }

bool is_dominant(const RootDatum&, const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

Weight to_dominant(const RootDatum& datum, const Weight& w) {
  Weight v = w;
  const auto& c = datum.cartan();
  int n = datum.rank();
  while (true) {
    int i = -1;
    for (int k = 0; k < n; ++k)
      if (v[k] < 0) { i = k; break; }
    if (i < 0) return v;
    int vi = v[i];
    for (int k = 0; k < n; ++k) v[k] -= vi * c[k][i];
  }
}

std::set<Weight> weyl_orbit(const RootDatum& datum, const Weight& w) {
  std::set<Weight> orbit;
  std::vector<Weight> frontier{to_dominant(datum, w)};
  orbit.insert(frontier[0]);
  const auto& c = datum.cartan();
  int n = datum.rank();
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& v : frontier) {
      for (int i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        Weight r = v;
        for (int k = 0; k < n; ++k) r[k] -= v[i] * c[k][i];
        if (orbit.insert(r).second) next.push_back(r);
      }
    }
    frontier = std::move(next);
  }
  return orbit;
}

bool is_dominant(const GroupShape&, const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

Weight to_dominant(const GroupShape& g, const Weight& w) {
  Weight out;
  out.reserve(w.size());
  size_t pos = 0;
  for (const auto& t : g.components) {
    Weight part(w.begin() + pos, w.begin() + pos + t.rank);
    Weight dom = to_dominant(RootDatum::get(t), part);
    out.insert(out.end(), dom.begin(), dom.end());
    pos += t.rank;
  }
  return out;
}

long long coroot_height(const GroupShape& g, const Weight& w) {
  // Sum of per-component heights over a common denominator; strictly
  // monotone along the (componentwise) dominance order, which is all the
  // greedy peeling needs.
  long long common = 1;
  for (const auto& t : g.components) common *= RootDatum::get(t).cartan_det();
  long long acc = 0;
  size_t pos = 0;
  for (const auto& t : g.components) {
    const auto& d = RootDatum::get(t);
    Weight part(w.begin() + pos, w.begin() + pos + t.rank);
    acc += d.coroot_height(part) * (common / d.cartan_det());
    pos += t.rank;
  }
  return acc;
}

Weight dual_weight(const GroupShape& g, const Weight& w) {
  // -w0 acts componentwise; realised by sending the dominant representative
  // of -w through to_dominant.
  Weight neg(w.size());
  for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
  return to_dominant(g, neg);
}

DiagramAut DiagramAut::identity(SimpleType t) {
  DiagramAut a{t, t, Kind::Permutation, {}};
  a.perm.resize(t.rank);
  for (int i = 0; i < t.rank; ++i) a.perm[i] = i;
  return a;
}

DiagramAut DiagramAut::duality(SimpleType t) {
  DiagramAut a = identity(t);
  int n = t.rank;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) a.perm[i] = n - 1 - i;
      break;
    case Family::D:
      std::swap(a.perm[n - 2], a.perm[n - 1]);
      break;
    case Family::E:
      if (n != 6) throw input_error("no graph automorphism for " + t.name());
      a.perm = {5, 1, 4, 3, 2, 0};
      break;
    default:
      throw input_error("no graph automorphism for " + t.name());
  }
  return a;
}

DiagramAut DiagramAut::triality(SimpleType t) {
  if (t.family != Family::D || t.rank != 4) throw input_error("triality needs D4");
  DiagramAut a = identity(t);
  a.perm = {2, 1, 3, 0};  // l1 -> l3 -> l4 -> l1
  return a;
}

DiagramAut DiagramAut::fork_swap(SimpleType t) {
  if (t.family != Family::D) throw input_error("fork swap needs type D");
  return duality(t);
}

DiagramAut DiagramAut::special_isogeny(SimpleType t, int p) {
  if (t.family == Family::G) {
    if (p != 3) throw input_error("G2 special isogeny requires p = 3");
    return DiagramAut{t, t, Kind::SpecialIsogeny, {}};
  }
  if (t.family != Family::B && t.family != Family::C)
    throw input_error("special isogeny needs type B or C");
  if (p != 2) throw input_error("special isogeny requires p = 2");
  SimpleType target = t;
  if (t.rank > 2)
    target = SimpleType(t.family == Family::B ? Family::C : Family::B, t.rank);
  return DiagramAut{t, target, Kind::SpecialIsogeny, {}};
}

Weight DiagramAut::apply(const Weight& w) const {
  int n = source.rank;
  if (static_cast<int>(w.size()) != n) throw input_error("weight length mismatch in aut");
  Weight v(n, 0);
  if (kind == Kind::Permutation) {
    for (int i = 0; i < n; ++i) v[perm[i]] = w[i];
    return v;
  }
  // Special isogenies.
  if (source.family == Family::G) {
    // lambda_1 (short node) -> 3*lambda_... : short <-> long swap,
    // (a, b) -> (b, 3a) so that the square is the Frobenius at p = 3.
    return Weight{w[1], 3 * w[0]};
  }
  if (source.rank == 2) {
    // B2 = C2 written in its own labels: (a, b) -> (b, 2a).
    return Weight{w[1], 2 * w[0]};
  }
  if (source.family == Family::B) {
    // B_n -> C_n: (a_1..a_n) -> (2a_1,..,2a_{n-1}, a_n).
    for (int i = 0; i < n - 1; ++i) v[i] = 2 * w[i];
    v[n - 1] = w[n - 1];
    return v;
  }
  // C_n -> B_n: (b_1..b_n) -> (b_1,..,b_{n-1}, 2 b_n).
  for (int i = 0; i < n - 1; ++i) v[i] = w[i];
  v[n - 1] = 2 * w[n - 1];
  return v;
}

bool DiagramAut::is_identity() const {
  if (kind != Kind::Permutation) return false;
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

Weight apply_diagram_aut(const DiagramAut& aut, const Weight& w) { return aut.apply(w); }

namespace {

// Brute-force Bourbaki ordering search for a connected base of <= 9 nodes.
std::optional<std::pair<SimpleType, std::vector<int>>> match_type(
    const std::vector<std::vector<int>>& gram) {
  int n = static_cast<int>(gram.size());
  std::vector<SimpleType> candidates;
  auto add = [&](Family f, int r) {
    try {
      candidates.emplace_back(f, r);
    } catch (const input_error&) {}
  };
  add(Family::A, n);
  add(Family::B, n);
  add(Family::C, n);
  add(Family::D, n);
  add(Family::E, n);
  add(Family::F, n);
  add(Family::G, n);
  std::vector<int> order(n);
  for (const auto& t : candidates) {
    std::vector<std::vector<int>> want;
    std::vector<int> d;
    fill_cartan(t, want, d);
    std::iota(order.begin(), order.end(), 0);
    // order[i] = which input node plays Bourbaki node i
    std::sort(order.begin(), order.end());
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if (gram[order[i]][order[j]] != want[i][j]) ok = false;
      if (ok) return std::make_pair(t, order);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

}  // namespace

std::vector<SubsystemComponent> classify_base(const RootDatum& ambient,
                                              const std::vector<std::vector<int>>& base) {
  int m = static_cast<int>(base.size());
  for (const auto& b : base)
    if (!ambient.is_root(b)) throw input_error("base vector is not a root of the ambient system");
  // Pairing matrix <beta_i, beta_j^vee>.
  std::vector<std::vector<int>> gram(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram[j][i] = ambient.pair_with_coroot(ambient.root_to_weight(base[i]), base[j]);
  for (int i = 0; i < m; ++i) {
    if (gram[i][i] != 2) throw input_error("base is not a valid simple system");
    for (int j = 0; j < m; ++j)
      if (i != j && gram[i][j] > 0) throw input_error("base is not a valid simple system");
  }
  // Connected components.
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < m; ++u)
        if (comp[u] < 0 && gram[v][u] != 0) {
          comp[u] = ncomp;
          stack.push_back(u);
        }
    }
    ++ncomp;
  }
  std::vector<SubsystemComponent> out;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < m; ++i)
      if (comp[i] == c) nodes.push_back(i);
    int k = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> sub(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = gram[nodes[i]][nodes[j]];
    auto matched = match_type(sub);
    if (!matched) throw input_error("unrecognized component type in base");
    SubsystemComponent sc{matched->first, {}};
    for (int i = 0; i < k; ++i) sc.base.push_back(base[nodes[matched->second[i]]]);
    out.push_back(std::move(sc));
  }
  std::sort(out.begin(), out.end(), [](const SubsystemComponent& a, const SubsystemComponent& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.base < b.base;
  });
  return out;
}

std::vector<SubsystemComponent> borel_de_siebenthal(const RootDatum& datum, int deleted_node) {
  int n = datum.rank();
  if (deleted_node < 0 || deleted_node > n) throw input_error("invalid extended-diagram node");
  std::vector<std::vector<int>> base;
  for (int i = 0; i < n; ++i) {
    if (i == deleted_node) continue;
    std::vector<int> e(n, 0);
    e[i] = 1;
    base.push_back(std::move(e));
  }
  if (deleted_node != n) {
    std::vector<int> lowest = datum.highest_root();
    for (auto& x : lowest) x = -x;
    base.push_back(std::move(lowest));
  }
  return classify_base(datum, base);
}

}  // namespace liecf
