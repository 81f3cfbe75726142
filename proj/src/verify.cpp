#include "liecf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace liecf {

std::string ScreenVerdict::to_string() const {
  if (kind == Kind::Irreducible) {
    switch (reason) {
      case Reason::NoTrivials: return "irreducible (no trivial adjoint factors)";
      case Reason::DimensionBound: return "irreducible (factor dimension bound)";
      case Reason::NoLeviMatch: return "irreducible (no Levi admits the factors)";
    }
  }
  std::string out = "possibly reducible (witness Levi:";
  for (const auto& w : witnesses) out += " " + w;
  return out + ")";
}

namespace {

Weight module_weight(SimpleType g, const std::string& key) {
  if (key == "vmin") return Atlas::minimal_module_weight(g);
  if (key == "adj") return Atlas::adjoint_weight(g);
  if (key == "spin") {
    if (g.family != Family::D) throw input_error("spin module needs type D");
    Weight w(g.rank, 0);
    w[g.rank - 2] = 1;
    return w;
  }
  throw input_error("unknown module key: " + key);
}

std::vector<std::string> row_module_keys(const ExpectedRow& row) {
  switch (row.table) {
    case 5: return {"adj"};
    case 13: return {"vmin", "spin"};
    case 12: return {"adj"};
    case 10:
    case 11: return {"vmin", "adj"};
    default: break;
  }
  if (row.group.family == Family::E && row.group.rank == 8) return {"adj"};
  return {"vmin", "adj"};
}

std::string twists_to_string(const std::map<char, int>& twists) {
  std::string out;
  for (const auto& [v, k] : twists) {
    if (!out.empty()) out += ',';
    out += v;
    out += '=';
    out += std::to_string(k);
  }
  return out.empty() ? "-" : out;
}

bool row_legal(const ExpectedRow& row, int p) {
  if (!row.cond.allows(p)) return false;
  if (!row.twists.vars.empty() && p == 0) return false;  // twists need Frobenius
  return true;
}

}  // namespace

std::map<std::string, FactorMultiset> computed_row_factors(const ExpectedRow& row, int p,
                                                           const std::map<char, int>& twists,
                                                           const Atlas& atlas) {
  Embedding chain = atlas.chain_embedding(row, p, twists);
  std::map<std::string, FactorMultiset> out;
  GroupShape ambient({row.group}, p);
  for (const auto& key : row_module_keys(row)) {
    Weight w = module_weight(row.group, key);
    FactorMultiset top = weyl_factors(ambient, w, p, atlas.db());
    out[key] = restrict_factors(top, chain, p, atlas.db());
  }
  return out;
}

// ---------------------------------------------------------------- verify

namespace {

// Match each Levi table row to a computed Levi class together with a
// relabelling; returns (class index, label permutation) per row id.
struct LeviMatch {
  int class_index = -1;
  std::vector<int> perm;
};

std::vector<std::vector<int>> shape_label_perms_for(const GroupShape& shape);

FactorMultiset permute_labels(const FactorMultiset& f, const std::vector<int>& perm) {
  FactorMultiset out(f.group);
  for (const auto& [w, m] : f.factors) {
    Weight v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[perm[i]] = w[i];
    out.add(v, m);
  }
  return out;
}

// Shared with atlas.cpp logic; reimplemented here over public surface.
std::vector<std::vector<int>> shape_label_perms_for(const GroupShape& shape) {
  std::vector<std::vector<std::vector<int>>> comp_auts;
  for (const auto& t : shape.components) {
    std::vector<DiagramAut> auts{DiagramAut::identity(t)};
    try {
      auts.push_back(DiagramAut::duality(t));
    } catch (const input_error&) {}
    if (t.family == Family::D && t.rank == 4) {
      auto tau = DiagramAut::triality(t);
      std::vector<DiagramAut> more;
      for (const auto& a : auts) {
        DiagramAut b = a;
        for (int rep = 0; rep < 2; ++rep) {
          DiagramAut c = b;
          for (int i = 0; i < t.rank; ++i) c.perm[i] = tau.perm[b.perm[i]];
          more.push_back(c);
          b = c;
        }
      }
      auts.insert(auts.end(), more.begin(), more.end());
    }
    std::vector<std::vector<int>> perms;
    for (const auto& a : auts) perms.push_back(a.perm);
    comp_auts.push_back(std::move(perms));
  }
  std::vector<int> offset(shape.components.size());
  int off = 0;
  for (size_t i = 0; i < shape.components.size(); ++i) {
    offset[i] = off;
    off += shape.components[i].rank;
  }
  std::vector<int> comp_order(shape.components.size());
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::vector<std::vector<int>> comp_perms;
  do {
    bool ok = true;
    for (size_t i = 0; i < comp_order.size(); ++i)
      if (!(shape.components[comp_order[i]] == shape.components[i])) ok = false;
    if (ok) comp_perms.push_back(comp_order);
  } while (std::next_permutation(comp_order.begin(), comp_order.end()));
  std::vector<std::vector<int>> out;
  std::vector<size_t> idx(shape.components.size(), 0);
  std::function<void(size_t, const std::vector<int>&)> rec = [&](size_t ci,
                                                                 const std::vector<int>& cp) {
    if (ci == shape.components.size()) {
      std::vector<int> perm(shape.total_rank());
      for (size_t i = 0; i < shape.components.size(); ++i) {
        const auto& aut = comp_auts[i][idx[i]];
        for (int k = 0; k < shape.components[i].rank; ++k)
          perm[offset[i] + k] = offset[cp[i]] + aut[k];
      }
      out.push_back(std::move(perm));
      return;
    }
    for (idx[ci] = 0; idx[ci] < comp_auts[ci].size(); ++idx[ci]) rec(ci + 1, cp);
  };
  for (const auto& cp : comp_perms) rec(0, cp);
  return out;
}

std::map<std::string, LeviMatch> match_levi_rows(SimpleType g, const Atlas& atlas,
                                                 std::string* coverage_note) {
  std::map<std::string, LeviMatch> out;
  const auto& classes = atlas.levi_subgroups(g);
  std::vector<bool> used(classes.size(), false);
  for (const auto& row : atlas.levi_rows()) {
    if (!(row.group == g)) continue;
    // expected multisets at p = 0
    ModularDB nodb;
    FactorMultiset vexp(row.target), aexp(row.target);
    if (row.expected.count("vmin"))
      vexp = evaluate_factor_list(row.expected.at("vmin"), row.target, 0, {}, nodb);
    aexp = evaluate_factor_list(row.expected.at("adj"), row.target, 0, {}, nodb);
    bool matched = false;
    for (size_t ci = 0; ci < classes.size() && !matched; ++ci) {
      const auto& lc = classes[ci];
      if (!(GroupShape(lc.shape.components, 0) == row.target)) continue;
      for (const auto& perm : shape_label_perms_for(lc.shape)) {
        FactorMultiset av = permute_labels(lc.adj0, perm);
        if (!(av == aexp)) continue;
        if (row.expected.count("vmin")) {
          FactorMultiset vv = permute_labels(lc.vmin0, perm);
          if (!(vv == vexp)) continue;
        }
        out[row.id] = LeviMatch{static_cast<int>(ci), perm};
        used[ci] = true;
        matched = true;
        break;
      }
    }
    if (!matched) out[row.id] = LeviMatch{};  // reported as failure later
  }
  int unmatched_classes = 0;
  for (size_t ci = 0; ci < classes.size(); ++ci)
    if (!used[ci]) ++unmatched_classes;
  if (coverage_note) {
    if (unmatched_classes)
      *coverage_note = std::to_string(unmatched_classes) + " computed Levi classes not in table";
    else
      *coverage_note = "";
  }
  return out;
}

template <typename Task>
void run_parallel(std::vector<Task>& tasks, int jobs) {
  if (jobs <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
  for (int i = 0; i < n; ++i)
    pool.emplace_back([&] {
      while (true) {
        size_t k = next.fetch_add(1);
        if (k >= tasks.size()) break;
        tasks[k]();
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<RowReport> verify_tables(SimpleType g, const VerifyOptions& opts, const Atlas& atlas) {
  std::vector<RowReport> reports;
  std::vector<std::function<void()>> tasks;

  auto want_table = [&](int t) {
    return opts.tables.empty() ||
           std::find(opts.tables.begin(), opts.tables.end(), t) != opts.tables.end();
  };

  // Classification rows (chains).
  std::vector<std::tuple<const ExpectedRow*, int, std::map<char, int>>> items;
  for (const auto& row : atlas.class_rows()) {
    if (!(row.group == g) || row.table == 0 || !want_table(row.table)) continue;
    for (int p : opts.characteristics) {
      if (!row_legal(row, p)) continue;
      for (const auto& assign : row.twists.assignments(opts.twist_base))
        items.emplace_back(&row, p, assign);
    }
  }
  size_t class_count = items.size();

  // Levi rows.
  std::string coverage_note;
  auto matches = match_levi_rows(g, atlas, &coverage_note);
  std::vector<std::tuple<const ExpectedRow*, int>> levi_items;
  for (const auto& row : atlas.levi_rows()) {
    if (!(row.group == g) || !want_table(row.table)) continue;
    for (int p : opts.characteristics)
      if (row.cond.allows(p)) levi_items.emplace_back(&row, p);
  }

  reports.resize(class_count + levi_items.size());
  for (size_t i = 0; i < class_count; ++i) {
    tasks.emplace_back([&, i] {
      const auto& [rowp, p, assign] = items[i];
      const ExpectedRow& row = *rowp;
      RowReport rep;
      rep.table = row.table;
      rep.id = row.id;
      rep.descr = row.descr;
      rep.p = p;
      rep.twists = twists_to_string(assign);
      rep.note = row.note;
      try {
        auto computed = computed_row_factors(row, p, assign, atlas);
        std::string cs, es;
        bool pass = true;
        bool any_expected = false;
        for (const auto& key : row_module_keys(row)) {
          if (!cs.empty()) cs += " | ";
          cs += key + ": " + computed.at(key).to_string();
          auto it = row.expected.find(key);
          if (it == row.expected.end()) continue;
          any_expected = true;
          FactorMultiset exp =
              evaluate_factor_list(it->second, GroupShape(row.target.components, p), p, assign,
                                   atlas.db());
          if (!es.empty()) es += " | ";
          es += key + ": " + exp.to_string();
          if (!(exp == computed.at(key))) pass = false;
        }
        rep.checked = any_expected;
        rep.pass = pass;
        rep.computed = cs;
        rep.expected = es;
      } catch (const std::exception& ex) {
        rep.pass = false;
        rep.checked = true;
        rep.computed = std::string("error: ") + ex.what();
      }
      reports[i] = std::move(rep);
    });
  }
  for (size_t j = 0; j < levi_items.size(); ++j) {
    tasks.emplace_back([&, j] {
      const auto& [rowp, p] = levi_items[j];
      const ExpectedRow& row = *rowp;
      RowReport rep;
      rep.table = row.table;
      rep.id = row.id;
      rep.descr = row.descr;
      rep.p = p;
      rep.twists = "-";
      rep.checked = true;
      try {
        auto mit = matches.find(row.id);
        if (mit == matches.end() || mit->second.class_index < 0)
          throw data_error("no computed Levi class matches this row");
        const auto& lc = atlas.levi_subgroups(g)[mit->second.class_index];
        std::string cs, es;
        bool pass = true;
        for (const auto& key : row_module_keys(row)) {
          if (!row.expected.count(key)) continue;
          FactorMultiset comp = permute_labels(atlas.levi_factors(g, lc, key, p),
                                               mit->second.perm);
          FactorMultiset exp = evaluate_factor_list(
              row.expected.at(key), GroupShape(row.target.components, p), p, {}, atlas.db());
          if (!cs.empty()) cs += " | ";
          cs += key + ": " + comp.to_string();
          if (!es.empty()) es += " | ";
          es += key + ": " + exp.to_string();
          if (!(comp == exp)) pass = false;
        }
        rep.pass = pass;
        rep.computed = cs;
        rep.expected = es;
      } catch (const std::exception& ex) {
        rep.pass = false;
        rep.computed = std::string("error: ") + ex.what();
      }
      reports[class_count + j] = std::move(rep);
    });
  }
  run_parallel(tasks, opts.jobs);

  if (!coverage_note.empty()) {
    RowReport rep;
    rep.table = 10;
    rep.id = "levi-coverage";
    rep.descr = "computed Levi classes vs table rows";
    rep.checked = true;
    rep.pass = false;
    rep.note = coverage_note;
    reports.push_back(std::move(rep));
  }
  return reports;
}

// ---------------------------------------------------------- distinctness

namespace {

// Canonical form of an adjoint factor multiset under diagram automorphisms
// of the subgroup and a global Frobenius shift.
std::string canonical_factors(const FactorMultiset& f, int p) {
  std::vector<std::string> forms;
  GroupShape shape(f.group.components, 0);
  for (const auto& perm : shape_label_perms_for(shape)) {
    FactorMultiset g = permute_labels(f, perm);
    // strip the largest common p-power
    if (p > 1) {
      while (true) {
        bool divisible = !g.factors.empty();
        for (const auto& [w, m] : g.factors) {
          (void)m;
          for (int x : w)
            if (x % p != 0) divisible = false;
        }
        if (!divisible) break;
        FactorMultiset h(g.group);
        for (const auto& [w, m] : g.factors) {
          Weight v(w.size());
          for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / p;
          h.add(v, m);
        }
        g = std::move(h);
      }
    }
    forms.push_back(g.to_string());
  }
  return *std::min_element(forms.begin(), forms.end());
}

}  // namespace

std::vector<DistinctnessReport> check_factor_distinctness(SimpleType g, const VerifyOptions& opts,
                                                          const Atlas& atlas) {
  std::vector<DistinctnessReport> out;
  for (int p : opts.characteristics) {
    DistinctnessReport rep;
    rep.p = p;
    {
      std::string t;
      for (size_t i = 0; i < opts.twist_base.size(); ++i) {
        if (i) t += ',';
        t += std::to_string(opts.twist_base[i]);
      }
      rep.twists = t;
    }
    std::map<std::string, std::set<std::string>> canon_to_rows;
    for (const auto& row : atlas.class_rows()) {
      if (!(row.group == g) || row.table == 0) continue;
      if (!row_legal(row, p)) continue;
      for (const auto& assign : row.twists.assignments(opts.twist_base)) {
        auto factors = computed_row_factors(row, p, assign, atlas);
        canon_to_rows[canonical_factors(factors.at("adj"), p)].insert(row.id);
      }
    }
    for (const auto& [canon, ids] : canon_to_rows) {
      (void)canon;
      if (ids.size() < 2) continue;
      std::vector<std::string> v(ids.begin(), ids.end());
      for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) rep.coincidences.emplace_back(v[i], v[j]);
    }
    std::sort(rep.coincidences.begin(), rep.coincidences.end());
    out.push_back(std::move(rep));
  }
  return out;
}

// ------------------------------------------------------------- screening

namespace {

struct Block {
  long long capacity = 0;
  int partner = -1;   // index of dual partner block (-1: self-dual)
};

struct Item {
  Weight label;
  Weight dual_label;
  long long dim = 0;
};

bool cover_search(std::vector<Block>& blocks, std::vector<Item>& items, size_t at,
                  std::vector<long long>& used,
                  std::map<std::pair<size_t, Weight>, long long>& reserved);

// Assign items[at..] to blocks; `reserved` holds forced dual assignments per
// block (label -> count still owed to that block).
bool cover_search(std::vector<Block>& blocks, std::vector<Item>& items, size_t at,
                  std::vector<long long>& used,
                  std::map<std::pair<size_t, Weight>, long long>& reserved) {
  if (at == items.size()) {
    for (size_t b = 0; b < blocks.size(); ++b)
      if (used[b] != blocks[b].capacity) return false;
    for (const auto& [k, v] : reserved)
      if (v != 0) return false;
    return true;
  }
  Item& it = items[at];
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (used[b] + it.dim > blocks[b].capacity) continue;
    // honour reservations first: if this block owes a copy of this label,
    // consume it; otherwise create the dual obligation.
    auto key = std::make_pair(b, it.label);
    bool had_reservation = reserved.count(key) && reserved[key] > 0;
    size_t dual_block = blocks[b].partner < 0 ? b : static_cast<size_t>(blocks[b].partner);
    auto dual_key = std::make_pair(dual_block, it.dual_label);
    used[b] += it.dim;
    if (had_reservation) {
      reserved[key] -= 1;
      if (cover_search(blocks, items, at + 1, used, reserved)) return true;
      reserved[key] += 1;
    } else {
      reserved[dual_key] += 1;
      if (cover_search(blocks, items, at + 1, used, reserved)) return true;
      reserved[dual_key] -= 1;
    }
    used[b] -= it.dim;
  }
  return false;
}

long long count_trivials(const FactorMultiset& f) {
  Weight zero(f.group.total_rank(), 0);
  auto it = f.factors.find(zero);
  return it == f.factors.end() ? 0 : it->second;
}

}  // namespace

ScreenVerdict screen_irreducibility(SimpleType g, int p, SimpleType x_type,
                                    const FactorMultiset& adj_factors,
                                    const FactorMultiset* vmin_factors, const Atlas& atlas) {
  const ModularDB& db = atlas.db();
  // Dimension consistency of the inputs.
  long long adj_dim = factor_dim(adj_factors, p, db);
  if (adj_dim != static_cast<long long>(weyl_dim(GroupShape(g, 0), Atlas::adjoint_weight(g))))
    throw input_error("adjoint factor dimensions do not sum to dim L(G)");
  if (vmin_factors) {
    long long vd = factor_dim(*vmin_factors, p, db);
    if (vd !=
        static_cast<long long>(weyl_dim(GroupShape(g, 0), Atlas::minimal_module_weight(g))))
      throw input_error("minimal-module factor dimensions do not sum to dim V_min");
  }

  ScreenVerdict verdict;
  if (count_trivials(adj_factors) == 0) {
    verdict.kind = ScreenVerdict::Kind::Irreducible;
    verdict.reason = ScreenVerdict::Reason::NoTrivials;
    return verdict;
  }

  bool all_failed_by_dim = true;
  std::vector<std::string> witnesses;
  for (const auto& levi : atlas.levi_subgroups(g)) {
    // A same-type subgroup projects onto every simple factor, so each factor
    // needs rank >= rank(X); B and C are interchangeable at p = 2.
    bool rank_ok = true;
    for (const auto& c : levi.shape.components) {
      if (c.rank < x_type.rank) rank_ok = false;
      (void)p;
    }
    if (!rank_ok) continue;
    int ssrank = levi.shape.total_rank();
    bool feasible = true;
    bool dim_killed = false;
    // Trivial-count bound from the central torus of the Levi.
    if (count_trivials(adj_factors) < g.rank - ssrank) feasible = false;
    std::vector<std::pair<std::string, const FactorMultiset*>> modules;
    modules.emplace_back("adj", &adj_factors);
    if (vmin_factors) modules.emplace_back("vmin", vmin_factors);
    for (const auto& [key, xf] : modules) {
      if (!feasible) break;
      FactorMultiset lf = atlas.levi_factors(g, levi, key, p);
      if (count_trivials(*xf) < count_trivials(lf)) {
        feasible = false;
        break;
      }
      // Max factor dimension bound.
      long long xmax = 0;
      for (const auto& [w, m] : xf->factors) {
        (void)m;
        xmax = std::max(xmax, static_cast<long long>(irr_dim(xf->group, w, p, db)));
      }
      long long lmax = 0;
      for (const auto& [w, m] : lf.factors) {
        (void)m;
        lmax = std::max(lmax, static_cast<long long>(irr_dim(lf.group, w, p, db)));
      }
      if (xmax > lmax) {
        feasible = false;
        dim_killed = true;
        break;
      }
      // Exact cover of X's factors into the Levi's blocks with dual blocks
      // carrying dual factors.
      std::vector<Block> blocks;
      std::vector<Weight> block_labels;
      for (const auto& [w, m] : lf.factors) {
        long long bd = static_cast<long long>(irr_dim(lf.group, w, p, db));
        for (long long i = 0; i < m; ++i) {
          blocks.push_back(Block{bd, -1});
          block_labels.push_back(w);
        }
      }
      // pair dual blocks
      for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].partner >= 0) continue;
        Weight dl = dual_weight(lf.group, block_labels[i]);
        if (dl == block_labels[i]) continue;  // self-dual: partner -1
        for (size_t j = i + 1; j < blocks.size(); ++j)
          if (blocks[j].partner < 0 && block_labels[j] == dl) {
            blocks[i].partner = static_cast<int>(j);
            blocks[j].partner = static_cast<int>(i);
            break;
          }
      }
      std::vector<Item> xitems;
      for (const auto& [w, m] : xf->factors) {
        Item item{w, dual_weight(xf->group, w),
                  static_cast<long long>(irr_dim(xf->group, w, p, db))};
        for (long long i = 0; i < m; ++i) xitems.push_back(item);
      }
      std::sort(xitems.begin(), xitems.end(),
                [](const Item& a, const Item& b) { return a.dim > b.dim; });
      std::vector<long long> used(blocks.size(), 0);
      std::map<std::pair<size_t, Weight>, long long> reserved;
      if (!cover_search(blocks, xitems, 0, used, reserved)) feasible = false;
    }
    if (feasible) {
      witnesses.push_back(levi.name);
      all_failed_by_dim = false;
    } else if (!dim_killed) {
      all_failed_by_dim = false;
    }
  }
  if (witnesses.empty()) {
    verdict.kind = ScreenVerdict::Kind::Irreducible;
    verdict.reason = all_failed_by_dim ? ScreenVerdict::Reason::DimensionBound
                                       : ScreenVerdict::Reason::NoLeviMatch;
  } else {
    verdict.kind = ScreenVerdict::Kind::PossiblyReducible;
    verdict.witnesses = std::move(witnesses);
  }
  return verdict;
}

bool all_factors_restricted(const FactorMultiset& f, int p) {
  for (const auto& [w, m] : f.factors) {
    (void)m;
    if (!is_restricted(w, p)) return false;
  }
  return true;
}

std::vector<ScreenRowReport> screen_tables(SimpleType g, const VerifyOptions& opts,
                                           const Atlas& atlas) {
  std::vector<ScreenRowReport> out;
  bool has_vmin = !(g.family == Family::E && g.rank == 8);
  for (const auto& row : atlas.class_rows()) {
    if (!(row.group == g) || row.table == 0) continue;
    for (int p : opts.characteristics) {
      if (!row_legal(row, p)) continue;
      for (const auto& assign : row.twists.assignments(opts.twist_base)) {
        ScreenRowReport rep;
        rep.id = row.id;
        rep.p = p;
        rep.twists = twists_to_string(assign);
        rep.note = row.note;
        auto factors = computed_row_factors(row, p, assign, atlas);
        SimpleType x_type = row.target.components.size() == 1 ? row.target.components[0]
                                                              : row.target.components[0];
        rep.verdict = screen_irreducibility(
            g, p, x_type, factors.at("adj"),
            has_vmin && factors.count("vmin") ? &factors.at("vmin") : nullptr, atlas);
        rep.restricted = p > 0 && all_factors_restricted(factors.at("adj"), p);
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

// --------------------------------------------------------------- rendering

std::string render_reports_text(const std::vector<RowReport>& reports) {
  std::ostringstream os;
  int fails = 0, checked = 0;
  for (const auto& r : reports) {
    os << "table " << r.table << " row " << r.id << " p=" << r.p << " twists=" << r.twists
       << " : ";
    if (!r.checked) {
      os << "computed (" << r.computed << ")";
    } else if (r.pass) {
      os << "pass";
      ++checked;
    } else {
      os << "FAIL";
      ++checked;
      ++fails;
      os << "\n  computed: " << r.computed << "\n  expected: " << r.expected;
    }
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << "\n";
  }
  os << "checked " << checked << " row instances, " << fails << " failures\n";
  return os.str();
}

std::string render_reports_json(const std::vector<RowReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"table", r.table},
                   {"row", r.id},
                   {"descr", r.descr},
                   {"p", r.p},
                   {"twists", r.twists},
                   {"status", !r.checked ? "computed" : (r.pass ? "pass" : "fail")},
                   {"computed", r.computed},
                   {"expected", r.expected},
                   {"note", r.note}});
  }
  return arr.dump(2);
}

}  // namespace liecf
