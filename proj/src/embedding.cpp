#include "liecf/embedding.hpp"

#include <algorithm>
#include <numeric>

namespace liecf {

Embedding::Embedding(GroupShape source, GroupShape target, Body body)
    : source_(std::move(source)),
      target_(std::move(target)),
      body_(std::make_shared<Body>(std::move(body))) {}

Weight Embedding::apply(const Weight& w) const {
  const auto* wm = std::get_if<WeightMapBody>(body_.get());
  if (!wm) throw input_error("apply() needs a weight-map embedding");
  const size_t rows = wm->matrix.size();
  Weight out(rows, 0);
  for (size_t i = 0; i < rows; ++i) {
    long long acc = 0;
    for (size_t j = 0; j < w.size(); ++j) acc += wm->matrix[i][j] * w[j];
    out[i] = static_cast<int>(acc);
  }
  return out;
}

Embedding identity_embedding(const GroupShape& g) {
  WeightMapBody body;
  int n = g.total_rank();
  body.matrix.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) body.matrix[i][i] = 1;
  return Embedding(g, g, std::move(body));
}

Embedding subsystem_embedding(const RootDatum& ambient,
                              const std::vector<SubsystemComponent>& components, int p) {
  std::vector<SimpleType> types;
  WeightMapBody body;
  for (const auto& comp : components) {
    types.push_back(comp.type);
    for (const auto& beta : comp.base) {
      if (!ambient.is_root(beta)) throw input_error("subsystem base vector is not a root");
      std::vector<long long> row(ambient.rank());
      for (int j = 0; j < ambient.rank(); ++j) {
        Weight ej(ambient.rank(), 0);
        ej[j] = 1;
        row[j] = ambient.pair_with_coroot(ej, beta);
      }
      body.matrix.push_back(std::move(row));
    }
  }
  GroupShape source(GroupShape({ambient.type()}, p));
  GroupShape target(std::move(types), p);
  return Embedding(source, target, std::move(body));
}

Embedding subsystem_embedding(const RootDatum& ambient,
                              const std::vector<std::vector<int>>& base, int p) {
  return subsystem_embedding(ambient, classify_base(ambient, base), p);
}

namespace {

// Order representatives deterministically: higher coroot height first.
bool weight_order(const GroupShape& g, const Weight& a, const Weight& b) {
  long long ha = coroot_height(g, a), hb = coroot_height(g, b);
  if (ha != hb) return ha > hb;
  return a > b;
}

bool halve(const std::vector<long long>& v, std::vector<long long>& out) {
  out.resize(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] % 2 != 0) return false;
    out[i] = v[i] / 2;
  }
  return true;
}

}  // namespace

Embedding classical_embedding(SimpleType ambient, const FormalCharacter& natural,
                              bool swap_halfspins, int p) {
  const GroupShape& tg = natural.group();
  const int trank = tg.total_rank();
  long long dim = natural.dim();
  long long expected = 0;
  switch (ambient.family) {
    case Family::A: expected = ambient.rank + 1; break;
    case Family::B: expected = 2 * ambient.rank + 1; break;
    case Family::C:
    case Family::D: expected = 2 * ambient.rank; break;
    default: throw input_error("classical_embedding needs a classical ambient type");
  }
  if (dim != expected)
    throw input_error("natural module has dimension " + std::to_string(dim) + ", expected " +
                      std::to_string(expected));

  std::vector<Weight> flat;
  for (const auto& [w, m] : natural.weights())
    for (long long i = 0; i < m; ++i) flat.push_back(w);

  std::vector<std::vector<long long>> eps;  // images of epsilon_1..epsilon_n
  if (ambient.family == Family::A) {
    std::vector<long long> sum(trank, 0);
    for (const auto& w : flat)
      for (int i = 0; i < trank; ++i) sum[i] += w[i];
    if (std::any_of(sum.begin(), sum.end(), [](long long x) { return x != 0; }))
      throw input_error("A-type natural module must have weights summing to zero");
    std::sort(flat.begin(), flat.end(),
              [&](const Weight& a, const Weight& b) { return weight_order(tg, a, b); });
    for (const auto& w : flat) {
      std::vector<long long> v(w.begin(), w.end());
      eps.push_back(std::move(v));
    }
  } else {
    // Pair the multiset into {u, -u}; the lone zero of a B-type natural is
    // dropped (it is epsilon-free).
    std::multiset<Weight> pool(flat.begin(), flat.end());
    std::vector<Weight> reps;
    if (ambient.family == Family::B) {
      Weight zero(trank, 0);
      auto it = pool.find(zero);
      if (it == pool.end()) throw input_error("B-type natural module needs a zero weight");
      pool.erase(it);
    }
    while (!pool.empty()) {
      Weight u = *pool.begin();
      pool.erase(pool.begin());
      Weight nu(trank);
      for (int i = 0; i < trank; ++i) nu[i] = -u[i];
      auto it = pool.find(nu);
      if (it == pool.end())
        throw input_error("natural module weights are not symmetric under negation");
      pool.erase(it);
      reps.push_back(weight_order(tg, u, nu) ? u : nu);
    }
    std::sort(reps.begin(), reps.end(),
              [&](const Weight& a, const Weight& b) { return weight_order(tg, a, b); });
    if (static_cast<int>(reps.size()) != ambient.rank)
      throw input_error("pairing mismatch in classical_embedding");

    // For spin columns we need half-sums to stay integral; flip pair
    // representatives until they do.
    bool needs_halving = ambient.family == Family::B || ambient.family == Family::D;
    int n = ambient.rank;
    unsigned long mask = 0;
    bool found = !needs_halving;
    if (needs_halving) {
      for (mask = 0; mask < (1UL << n); ++mask) {
        std::vector<long long> total(trank, 0);
        for (int i = 0; i < n; ++i) {
          int s = (mask >> i & 1) ? -1 : 1;
          for (int k = 0; k < trank; ++k) total[k] += s * reps[i][k];
        }
        std::vector<long long> half;
        if (halve(total, half)) {
          found = true;
          break;
        }
      }
      if (!found) throw input_error("no integral spin structure for this natural module");
    }
    for (int i = 0; i < n; ++i) {
      int s = (needs_halving && (mask >> i & 1)) ? -1 : 1;
      std::vector<long long> v(trank);
      for (int k = 0; k < trank; ++k) v[k] = s * reps[i][k];
      eps.push_back(std::move(v));
    }
    if (ambient.family == Family::D && swap_halfspins)
      for (int k = 0; k < trank; ++k) eps[n - 1][k] = -eps[n - 1][k];
  }

  // Columns of the map: images of the ambient fundamental weights
  // lambda_k = e_1 + ... + e_k, with the usual half-sum spin columns for
  // types B and D.
  int n = ambient.rank;
  auto halve_or_throw = [&](std::vector<long long> v) {
    std::vector<long long> h;
    if (!halve(v, h)) throw input_error("non-integral spin column");
    return h;
  };
  std::vector<std::vector<long long>> cols(n, std::vector<long long>(trank, 0));
  std::vector<long long> partial(trank, 0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < trank; ++i) partial[i] += eps[k][i];
    cols[k] = partial;
  }
  if (ambient.family == Family::B) {
    cols[n - 1] = halve_or_throw(cols[n - 1]);
  } else if (ambient.family == Family::D) {
    std::vector<long long> all = cols[n - 1];
    std::vector<long long> minus_last = all;
    for (int i = 0; i < trank; ++i) minus_last[i] -= 2 * eps[n - 1][i];
    cols[n - 2] = halve_or_throw(minus_last);
    cols[n - 1] = halve_or_throw(all);
  }
  WeightMapBody body;
  body.matrix.assign(trank, std::vector<long long>(n, 0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < trank; ++i) body.matrix[i][k] = cols[k][i];
  return Embedding(GroupShape({ambient}, p), GroupShape(tg.components, p), std::move(body));
}

Embedding diagonal_embedding(const DiagonalSpec& spec, SimpleType factor) {
  if (spec.legs.empty()) throw input_error("diagonal spec needs at least one leg");
  int n = factor.rank;
  WeightMapBody body;
  body.matrix.assign(n, std::vector<long long>(n * spec.legs.size(), 0));
  long long twist_scale = 1;
  for (size_t li = 0; li < spec.legs.size(); ++li) {
    const auto& leg = spec.legs[li];
    if (!(leg.aut.source == factor))
      throw input_error("diagonal leg automorphism acts on the wrong type");
    if (!(leg.aut.target == factor))
      throw input_error("diagonal leg automorphism must preserve the factor type");
    if (leg.aut.kind == DiagramAut::Kind::SpecialIsogeny) {
      int need = factor.family == Family::G ? 3 : 2;
      if (spec.p != need)
        throw input_error("special isogeny leg requires characteristic " + std::to_string(need));
    }
    if (leg.twist > 0 && spec.p == 0)
      throw input_error("twisted diagonal leg requires prime characteristic");
    twist_scale = 1;
    for (int i = 0; i < leg.twist; ++i) twist_scale *= spec.p;
    // Column j of this block: p^r * theta(lambda_j).
    for (int j = 0; j < n; ++j) {
      Weight ej(n, 0);
      ej[j] = 1;
      Weight im = leg.aut.apply(ej);
      for (int i = 0; i < n; ++i) body.matrix[i][li * n + j] = twist_scale * im[i];
    }
  }
  std::vector<SimpleType> comps(spec.legs.size(), factor);
  return Embedding(GroupShape(std::move(comps), spec.p), GroupShape({factor}, spec.p),
                   std::move(body));
}

Embedding factor_projection(const GroupShape& product, size_t first, size_t count, int p) {
  if (first + count > product.components.size()) throw input_error("factor_projection range");
  int offset = 0;
  for (size_t i = 0; i < first; ++i) offset += product.components[i].rank;
  std::vector<SimpleType> comps;
  int sub_rank = 0;
  for (size_t i = first; i < first + count; ++i) {
    comps.push_back(product.components[i]);
    sub_rank += product.components[i].rank;
  }
  WeightMapBody body;
  body.matrix.assign(sub_rank, std::vector<long long>(product.total_rank(), 0));
  for (int i = 0; i < sub_rank; ++i) body.matrix[i][offset + i] = 1;
  return Embedding(GroupShape(product.components, p), GroupShape(std::move(comps), p),
                   std::move(body));
}

Embedding transporter_embedding(GroupShape source, GroupShape target, int p,
                                std::map<Weight, FormalCharacter> entries) {
  TransporterBody body;
  body.p = p;
  body.entries = std::move(entries);
  return Embedding(std::move(source), std::move(target), std::move(body));
}

Embedding product_embedding(const std::vector<Embedding>& components, int p) {
  if (components.empty()) throw input_error("empty product embedding");
  bool all_maps = std::all_of(components.begin(), components.end(),
                              [](const Embedding& e) { return e.is_weight_map(); });
  std::vector<SimpleType> src, tgt;
  for (const auto& e : components) {
    src.insert(src.end(), e.source().components.begin(), e.source().components.end());
    tgt.insert(tgt.end(), e.target().components.begin(), e.target().components.end());
  }
  GroupShape source(std::move(src), p), target(std::move(tgt), p);
  if (all_maps) {
    WeightMapBody body;
    body.matrix.assign(target.total_rank(), std::vector<long long>(source.total_rank(), 0));
    int roff = 0, coff = 0;
    for (const auto& e : components) {
      const auto& m = std::get<WeightMapBody>(e.body()).matrix;
      for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) body.matrix[roff + i][coff + j] = m[i][j];
      roff += e.target().total_rank();
      coff += e.source().total_rank();
    }
    return Embedding(std::move(source), std::move(target), std::move(body));
  }
  ProductBody body;
  body.components = components;
  return Embedding(std::move(source), std::move(target), std::move(body));
}

Embedding compose_embeddings(const Embedding& outer, const Embedding& inner) {
  if (!(outer.target() == inner.source()))
    throw input_error("compose_embeddings: endpoint mismatch (" + outer.target().name() +
                      " vs " + inner.source().name() + ")");
  if (outer.is_weight_map() && inner.is_weight_map()) {
    const auto& a = std::get<WeightMapBody>(outer.body()).matrix;
    const auto& b = std::get<WeightMapBody>(inner.body()).matrix;
    WeightMapBody body;
    size_t rows = b.size(), mid = a.size(), cols = a.empty() ? 0 : a[0].size();
    body.matrix.assign(rows, std::vector<long long>(cols, 0));
    for (size_t i = 0; i < rows; ++i)
      for (size_t k = 0; k < mid; ++k)
        for (size_t j = 0; j < cols; ++j) body.matrix[i][j] += b[i][k] * a[k][j];
    return Embedding(outer.source(), inner.target(), std::move(body));
  }
  CompositeBody body;
  auto append = [&](const Embedding& e) {
    if (const auto* c = std::get_if<CompositeBody>(&e.body()))
      body.chain.insert(body.chain.end(), c->chain.begin(), c->chain.end());
    else
      body.chain.push_back(e);
  };
  append(outer);
  append(inner);
  return Embedding(outer.source(), inner.target(), std::move(body));
}

namespace {

// Transporter entry for an arbitrary label, derived from restricted entries
// through the Steinberg factorisation (twists commute with restriction).
FormalCharacter transporter_entry(const TransporterBody& t, const GroupShape& target,
                                  const Weight& label, int p) {
  auto direct = t.entries.find(label);
  if (direct != t.entries.end()) return direct->second;
  if (p > 0) {
    auto split = steinberg_split(label, p);
    if (!(split.size() == 1 && split[0].second == 0)) {
      FormalCharacter out = trivial_character(target);
      for (const auto& [part, r] : split) {
        auto it = t.entries.find(part);
        if (it == t.entries.end())
          throw data_error("missing transporter entry for " + weight_to_string(part));
        out = tensor(out, frobenius_twist(it->second, r, p));
      }
      return out;
    }
  }
  throw data_error("missing transporter entry for " + weight_to_string(label));
}

}  // namespace

FormalCharacter restrict_character(const FormalCharacter& a, const Embedding& e, int p,
                                   const ModularDB& db) {
  if (!(a.group() == e.source()))
    throw input_error("restrict_character: character lives on " + a.group().name() +
                      ", embedding expects " + e.source().name());
  if (const auto* wm = std::get_if<WeightMapBody>(&e.body())) {
    FormalCharacter out(GroupShape(e.target().components, p));
    for (const auto& [w, m] : a.weights()) {
      Weight v(wm->matrix.size(), 0);
      for (size_t i = 0; i < wm->matrix.size(); ++i) {
        long long acc = 0;
        for (size_t j = 0; j < w.size(); ++j) acc += wm->matrix[i][j] * w[j];
        v[i] = static_cast<int>(acc);
      }
      out.add(v, m);
    }
    return out;
  }
  if (const auto* c = std::get_if<CompositeBody>(&e.body())) {
    FormalCharacter cur = a;
    for (const auto& step : c->chain) cur = restrict_character(cur, step, p, db);
    return cur;
  }
  // Transporter / product: go through composition factors.
  FactorMultiset fm = decompose(a, p, db);
  FactorMultiset res = restrict_factors(fm, e, p, db);
  FormalCharacter out = factor_character(res, p, db);
  if (out.dim() != a.dim())
    throw data_error("restriction did not preserve dimension (" + std::to_string(a.dim()) +
                     " -> " + std::to_string(out.dim()) + ")");
  return out;
}

namespace {

FactorMultiset restrict_label(const Weight& label, const Embedding& e, int p,
                              const ModularDB& db) {
  if (const auto* t = std::get_if<TransporterBody>(&e.body())) {
    FormalCharacter entry = transporter_entry(*t, GroupShape(e.target().components, p), label, p);
    if (static_cast<long long>(irr_dim(e.source(), label, p, db)) != entry.dim())
      throw data_error("transporter entry for " + weight_to_string(label) +
                       " does not preserve dimension");
    return decompose(entry, p, db);
  }
  if (const auto* c = std::get_if<CompositeBody>(&e.body())) {
    FactorMultiset cur(GroupShape(e.source().components, p));
    cur.add(label, 1);
    for (const auto& step : c->chain) cur = restrict_factors(cur, step, p, db);
    return cur;
  }
  if (const auto* pr = std::get_if<ProductBody>(&e.body())) {
    // Split the label across the component embeddings and distribute.
    std::vector<FactorMultiset> parts;
    size_t pos = 0;
    for (const auto& comp : pr->components) {
      size_t r = comp.source().total_rank();
      Weight sub(label.begin() + pos, label.begin() + pos + r);
      pos += r;
      FactorMultiset f(GroupShape(comp.source().components, p));
      f.add(sub, 1);
      parts.push_back(restrict_factors(f, comp, p, db));
    }
    FactorMultiset out(GroupShape(e.target().components, p));
    std::vector<std::pair<Weight, long long>> acc{{Weight{}, 1}};
    for (const auto& part : parts) {
      std::vector<std::pair<Weight, long long>> next;
      for (const auto& [prefix, m0] : acc)
        for (const auto& [w, m] : part.factors) {
          Weight joined = prefix;
          joined.insert(joined.end(), w.begin(), w.end());
          next.emplace_back(std::move(joined), m0 * m);
        }
      acc = std::move(next);
    }
    for (const auto& [w, m] : acc) out.add(w, m);
    return out;
  }
  // Weight map: irreducible character, push through, decompose.
  FormalCharacter ic = irr_char(e.source(), label, p, db);
  return decompose(restrict_character(ic, e, p, db), p, db);
}

}  // namespace

FactorMultiset restrict_factors(const FactorMultiset& f, const Embedding& e, int p,
                                const ModularDB& db) {
  FactorMultiset out(GroupShape(e.target().components, p));
  for (const auto& [label, m] : f.factors) {
    FactorMultiset one = restrict_label(label, e, p, db);
    for (const auto& [w, k] : one.factors) out.add(w, k * m);
  }
  return out;
}

bool classical_restriction_irreducible(const FormalCharacter& natural_restricted, int p,
                                       const ModularDB& db) {
  FactorMultiset fm = decompose(natural_restricted, p, db);
  for (const auto& [w, m] : fm.factors) {
    if (m != 1) return false;
    if (dual_weight(fm.group, w) != w) return false;
  }
  return true;
}

}  // namespace liecf
