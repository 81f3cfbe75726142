#include "liecf/atlas.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

namespace liecf {

namespace detail {
const std::map<std::string, std::string>& embedded_data_files();
}

// ---------------------------------------------------------------- PCondition

bool PCondition::allows(int p) const {
  switch (kind) {
    case Kind::Any: return true;
    case Kind::Eq: return p == values[0];
    case Kind::Neq: return p != values[0];
    case Kind::Ge: return p == 0 || p >= values[0];  // p = 0 reads as infinity
    case Kind::Gt: return p == 0 || p > values[0];
    case Kind::In: return std::find(values.begin(), values.end(), p) != values.end();
  }
  return false;
}

PCondition PCondition::parse(const std::string& s) {
  PCondition c;
  if (s == "any" || s.empty()) return c;
  auto nums = [&](size_t from) {
    std::vector<int> vals;
    std::stringstream ss(s.substr(from));
    std::string tok;
    while (std::getline(ss, tok, '|')) vals.push_back(std::stoi(tok));
    return vals;
  };
  if (s.rfind("p!=", 0) == 0) {
    c.kind = Kind::Neq;
    c.values = nums(3);
  } else if (s.rfind("p>=", 0) == 0) {
    c.kind = Kind::Ge;
    c.values = nums(3);
  } else if (s.rfind("p>", 0) == 0) {
    c.kind = Kind::Gt;
    c.values = nums(2);
  } else if (s.rfind("p=", 0) == 0) {
    c.values = nums(2);
    c.kind = c.values.size() > 1 ? Kind::In : Kind::Eq;
  } else {
    throw input_error("bad characteristic condition: " + s);
  }
  return c;
}

std::string PCondition::to_string() const {
  auto join = [&](const char* head) {
    std::string out = head;
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out += '|';
      out += std::to_string(values[i]);
    }
    return out;
  };
  switch (kind) {
    case Kind::Any: return "any";
    case Kind::Eq:
    case Kind::In: return join("p=");
    case Kind::Neq: return join("p!=");
    case Kind::Ge: return join("p>=");
    case Kind::Gt: return join("p>");
  }
  return "any";
}

// ------------------------------------------------------------- factor lists

namespace {

FactorPiece parse_piece(const std::string& s, SimpleType comp_type) {
  FactorPiece piece;
  std::string rest = s;
  if (rest.rfind("W(", 0) == 0) {
    auto close = rest.find(')');
    if (close == std::string::npos) throw input_error("unterminated W( in " + s);
    piece.weyl = true;
    piece.label = parse_weight(rest.substr(2, close - 2), GroupShape(comp_type, 0));
    rest = rest.substr(close + 1);
  } else {
    auto bracket = rest.find('[');
    std::string digits = bracket == std::string::npos ? rest : rest.substr(0, bracket);
    piece.label = parse_weight(digits, GroupShape(comp_type, 0));
    rest = bracket == std::string::npos ? "" : rest.substr(bracket);
  }
  if (!rest.empty()) {
    if (rest.front() != '[' || rest.back() != ']') throw input_error("bad twist suffix in " + s);
    std::string tv = rest.substr(1, rest.size() - 2);
    if (tv.size() == 1 && std::isalpha(static_cast<unsigned char>(tv[0])))
      piece.twist_var = tv[0];
    else
      piece.twist_const = std::stoi(tv);
  }
  return piece;
}

}  // namespace

std::vector<FactorExpr> parse_factor_list(const std::string& s, const GroupShape& target) {
  std::vector<FactorExpr> out;
  if (s == "-" || s.empty()) return out;
  std::stringstream items(s);
  std::string item;
  while (std::getline(items, item, '/')) {
    FactorExpr expr;
    auto caret = item.rfind('^');
    if (caret != std::string::npos) {
      expr.mult = std::stoll(item.substr(caret + 1));
      item = item.substr(0, caret);
    }
    std::stringstream comps(item);
    std::string comp;
    size_t ci = 0;
    while (std::getline(comps, comp, ',')) {
      if (ci >= target.components.size())
        throw input_error("too many components in factor item: " + item);
      std::vector<FactorPiece> pieces;
      std::stringstream ps(comp);
      std::string piece;
      while (std::getline(ps, piece, '*'))
        pieces.push_back(parse_piece(piece, target.components[ci]));
      expr.comps.push_back(std::move(pieces));
      ++ci;
    }
    if (ci != target.components.size())
      throw input_error("factor item has " + std::to_string(ci) + " components, expected " +
                        std::to_string(target.components.size()) + ": " + item);
    out.push_back(std::move(expr));
  }
  return out;
}

FactorMultiset evaluate_factor_list(const std::vector<FactorExpr>& exprs,
                                    const GroupShape& target, int p,
                                    const std::map<char, int>& twists, const ModularDB& db) {
  FactorMultiset out(target);
  for (const auto& expr : exprs) {
    // Per component a multiset of labels; combined across components by
    // concatenation, within a component by label addition (tensor product of
    // irreducibles with distinct Frobenius twists).
    std::vector<std::map<Weight, long long>> comp_sets;
    for (size_t ci = 0; ci < expr.comps.size(); ++ci) {
      SimpleType t = target.components[ci];
      std::map<Weight, long long> acc{{Weight(t.rank, 0), 1}};
      for (const auto& piece : expr.comps[ci]) {
        int twist = piece.twist_const;
        if (piece.twist_var) {
          auto it = twists.find(piece.twist_var);
          if (it == twists.end())
            throw input_error(std::string("unbound twist variable ") + piece.twist_var);
          twist = it->second;
        }
        if (twist > 0 && p == 0) throw input_error("twisted factor at characteristic zero");
        std::map<Weight, long long> piece_set;
        if (piece.weyl && p > 0) {
          FactorMultiset wf = weyl_factors(GroupShape(t, p), piece.label, p, db);
          for (const auto& [w, m] : wf.factors) piece_set[twist_weight(w, twist, p)] += m;
        } else if (p > 0) {
          piece_set[twist_weight(piece.label, twist, p)] = 1;
        } else {
          piece_set[piece.label] = 1;
        }
        std::map<Weight, long long> next;
        for (const auto& [a, ma] : acc)
          for (const auto& [b, mb] : piece_set) {
            Weight sum(a.size());
            for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
            next[sum] += ma * mb;
          }
        acc = std::move(next);
      }
      comp_sets.push_back(std::move(acc));
    }
    std::vector<std::pair<Weight, long long>> joined{{Weight{}, expr.mult}};
    for (const auto& cs : comp_sets) {
      std::vector<std::pair<Weight, long long>> next;
      for (const auto& [prefix, m0] : joined)
        for (const auto& [w, m] : cs) {
          Weight j = prefix;
          j.insert(j.end(), w.begin(), w.end());
          next.emplace_back(std::move(j), m0 * m);
        }
      joined = std::move(next);
    }
    for (const auto& [w, m] : joined) out.add(w, m);
  }
  return out;
}

// -------------------------------------------------------------- twist specs

std::vector<std::map<char, int>> TwistSpec::assignments(const std::vector<int>& base) const {
  std::vector<std::map<char, int>> out;
  if (vars.empty()) {
    out.push_back({});
    return out;
  }
  if (one_zero) {
    if (vars.size() != 2) throw input_error("one-zero twist spec needs two variables");
    out.push_back({{vars[0], 0}, {vars[1], base.at(0)}});
    out.push_back({{vars[0], base.at(0)}, {vars[1], 0}});
    return out;
  }
  std::map<char, int> a;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i >= base.size()) throw input_error("not enough twist values supplied");
    a[vars[i]] = base[i];
  }
  out.push_back(std::move(a));
  return out;
}

// --------------------------------------------------------- embedding specs

struct EmbeddingSpec {
  enum class Kind { Subsystem, Classical, Transporter };
  Kind kind = Kind::Transporter;
  std::string name;
  SimpleType ambient{Family::A, 1};
  GroupShape target;
  PCondition cond;
  int pinned_p = 0;
  bool swap_halfspins = false;

  std::vector<std::vector<std::vector<int>>> base_components;  // subsystem
  std::vector<Weight> natural;                                 // classical

  struct Atom {
    Weight label;
    bool weyl = false;
    int alt = 0;
    std::vector<Atom> sub;
    long long mult = 1;
  };
  struct Entry {
    Weight source_label;
    bool irr_mode = false;
    std::vector<Atom> atoms;
  };
  std::vector<Entry> entries;
};

namespace {

std::vector<std::vector<int>> parse_root_list(const std::string& s, int rank) {
  std::vector<std::vector<int>> roots;
  std::string cur;
  int depth = 0;
  std::vector<std::string> items;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ';' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) items.push_back(cur);
  for (const auto& item : items) {
    size_t a = item.find('(');
    size_t b = item.find(')');
    if (a == std::string::npos || b == std::string::npos)
      throw input_error("bad root tuple: " + item);
    std::vector<int> root;
    std::stringstream cs(item.substr(a + 1, b - a - 1));
    std::string num;
    while (std::getline(cs, num, ',')) root.push_back(std::stoi(num));
    if (static_cast<int>(root.size()) != rank) throw input_error("root arity: " + item);
    roots.push_back(std::move(root));
  }
  return roots;
}

std::map<std::string, std::string> parse_kv(std::istringstream& ss, std::string* tail = nullptr) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (ss >> tok) {
    if (tok == ":") {
      if (tail) std::getline(ss, *tail);
      break;
    }
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      kv[tok] = "";
    else
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

EmbeddingSpec::Atom parse_atom(const std::string& s, const GroupShape& target);

std::vector<EmbeddingSpec::Atom> parse_atom_sum(const std::string& s, const GroupShape& target) {
  std::vector<EmbeddingSpec::Atom> atoms;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (c == '+' && depth == 0) {
      atoms.push_back(parse_atom(cur, target));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) atoms.push_back(parse_atom(cur, target));
  return atoms;
}

EmbeddingSpec::Atom parse_atom(const std::string& s, const GroupShape& target) {
  EmbeddingSpec::Atom atom;
  std::string rest = s;
  auto caret = rest.rfind('^');
  if (caret != std::string::npos && rest.find('}', caret) == std::string::npos &&
      rest.find(')', caret) == std::string::npos) {
    atom.mult = std::stoll(rest.substr(caret + 1));
    rest = rest.substr(0, caret);
  }
  if (rest.rfind("ALT2{", 0) == 0) {
    if (rest.back() != '}') throw input_error("unterminated ALT2{ in " + s);
    atom.alt = 2;
    atom.sub = parse_atom_sum(rest.substr(5, rest.size() - 6), target);
    return atom;
  }
  if (rest.rfind("W(", 0) == 0) {
    if (rest.back() != ')') throw input_error("unterminated W( in " + s);
    atom.weyl = true;
    atom.label = parse_weight(rest.substr(2, rest.size() - 3), target);
    return atom;
  }
  atom.label = parse_weight(rest, target);
  return atom;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

// ------------------------------------------------------------------- loader

void Atlas::parse_embedding_line(const std::string& raw) {
  std::string line = strip_comment(raw);
  std::istringstream ss(line);
  std::string kind;
  if (!(ss >> kind)) return;
  if (kind == "subsystem" || kind == "classical" || kind == "transporter") {
    std::string name;
    ss >> name;
    auto spec = std::make_shared<EmbeddingSpec>();
    spec->name = name;
    std::string tail;
    auto kv = parse_kv(ss, &tail);
    if (kv.count("pcond")) spec->cond = PCondition::parse(kv.at("pcond"));
    if (kind == "subsystem") {
      spec->kind = EmbeddingSpec::Kind::Subsystem;
      spec->ambient = parse_simple_type(kv.at("ambient"));
      std::stringstream comps(tail);
      std::string comp;
      while (std::getline(comps, comp, '|')) {
        auto roots = parse_root_list(comp, spec->ambient.rank);
        if (!roots.empty()) spec->base_components.push_back(roots);
      }
      if (spec->base_components.empty()) throw input_error("empty subsystem base: " + name);
    } else if (kind == "classical") {
      spec->kind = EmbeddingSpec::Kind::Classical;
      spec->ambient = parse_simple_type(kv.at("ambient"));
      spec->target = parse_group(kv.at("target"));
      spec->swap_halfspins = kv.count("swap") > 0;
      for (const auto& atom : parse_atom_sum(squeeze(tail), spec->target)) {
        if (!atom.weyl || atom.alt)
          throw input_error("natural module must be a sum of W(..) labels: " + name);
        for (long long i = 0; i < atom.mult; ++i) spec->natural.push_back(atom.label);
      }
    } else {
      spec->kind = EmbeddingSpec::Kind::Transporter;
      spec->ambient = parse_simple_type(kv.at("source"));
      spec->target = parse_group(kv.at("target"));
      if (kv.count("p")) spec->pinned_p = std::stoi(kv.at("p"));
    }
    embeddings_[name] = std::move(spec);
    return;
  }
  if (kind == "tentry") {
    std::string name;
    ss >> name;
    auto it = embeddings_.find(name);
    if (it == embeddings_.end()) throw input_error("tentry before its transporter: " + name);
    auto& spec = *it->second;
    std::string rest;
    std::getline(ss, rest);
    rest = squeeze(rest);
    EmbeddingSpec::Entry entry;
    if (!rest.empty() && rest[0] == '@') {
      entry.irr_mode = true;
      rest = rest.substr(1);
      // skip the pinned characteristic digits (documented, informational)
      while (!rest.empty() && std::isdigit(static_cast<unsigned char>(rest[0])))
        rest = rest.substr(1);
    }
    if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
    auto arrow = rest.find("->");
    if (arrow == std::string::npos) throw input_error("tentry needs '->': " + raw);
    GroupShape src(GroupShape({spec.ambient}, 0));
    entry.source_label = parse_weight(rest.substr(0, arrow), src);
    entry.atoms = parse_atom_sum(rest.substr(arrow + 2), spec.target);
    spec.entries.push_back(std::move(entry));
    return;
  }
  throw input_error("unknown embeddings.txt record: " + kind);
}

void Atlas::parse_maximal_line(const std::string& raw) {
  std::string line = strip_comment(raw);
  std::istringstream ss(line);
  std::string kind;
  if (!(ss >> kind)) return;
  if (kind != "maximal") throw input_error("unknown maximals.txt record: " + kind);
  auto kv = parse_kv(ss);
  MaximalEntry e{parse_simple_type(kv.at("G")),
                 kv.at("name"),
                 parse_group(kv.at("shape")),
                 kv.count("pcond") ? PCondition::parse(kv.at("pcond")) : PCondition{},
                 kv.at("emb"),
                 {},
                 {}};
  if (kv.count("vmin")) e.vmin = parse_factor_list(kv.at("vmin"), e.shape);
  e.adj = parse_factor_list(kv.at("adj"), e.shape);
  maximals_[{static_cast<char>(e.group.family), e.group.rank}].push_back(std::move(e));
}

void Atlas::parse_class_row_line(const std::string& raw, bool levi) {
  std::string line = strip_comment(raw);
  std::istringstream ss(line);
  std::string kind;
  if (!(ss >> kind)) return;
  if (kind != "row") throw input_error("unknown table record: " + kind);
  auto kv = parse_kv(ss);
  ExpectedRow row;
  row.table = std::stoi(kv.at("table"));
  row.id = kv.at("id");
  row.group = parse_simple_type(kv.at("G"));
  row.descr = kv.count("descr") ? kv.at("descr") : row.id;
  for (auto& c : row.descr)
    if (c == '_') c = ' ';
  if (kv.count("pcond")) row.cond = PCondition::parse(kv.at("pcond"));
  if (kv.count("twists")) {
    std::string t = kv.at("twists");
    if (t.rfind("onezero:", 0) == 0) {
      row.twists.one_zero = true;
      t = t.substr(8);
    }
    for (char c : t)
      if (std::isalpha(static_cast<unsigned char>(c))) row.twists.vars.push_back(c);
  }
  if (kv.count("chain")) {
    std::stringstream cs(kv.at("chain"));
    std::string step;
    while (std::getline(cs, step, ';')) row.chain.push_back(step);
  }
  if (kv.count("note")) {
    row.note = kv.at("note");
    for (auto& c : row.note)
      if (c == '_') c = ' ';
  }
  GroupShape target = parse_group(kv.at("target"));
  for (const char* key : {"vmin", "adj", "spin"})
    if (kv.count(key)) row.expected[key] = parse_factor_list(kv.at(key), target);
  row.target = target;
  (levi ? levi_rows_ : rows_).push_back(std::move(row));
}

void Atlas::finish_load() {
  db_.validate();
  // Deterministic row order: by table then id.
  auto order = [](const ExpectedRow& a, const ExpectedRow& b) {
    if (a.table != b.table) return a.table < b.table;
    return a.id < b.id;
  };
  std::stable_sort(rows_.begin(), rows_.end(), order);
  std::stable_sort(levi_rows_.begin(), levi_rows_.end(), order);
}

std::unique_ptr<Atlas> Atlas::from_contents(const std::map<std::string, std::string>& files) {
  auto atlas = std::unique_ptr<Atlas>(new Atlas());
  auto feed = [&](const std::string& name, void (Atlas::*fn)(const std::string&), bool levi) {
    std::istringstream in(files.at(name));
    std::string line;
    while (std::getline(in, line)) {
      if (fn)
        ((*atlas).*fn)(line);
      else
        atlas->parse_class_row_line(line, levi);
    }
  };
  {
    std::istringstream in(files.at("weyl_factors.txt"));
    atlas->db_ = ModularDB::parse(in);
  }
  feed("embeddings.txt", &Atlas::parse_embedding_line, false);
  feed("maximals.txt", &Atlas::parse_maximal_line, false);
  feed("class_tables.txt", nullptr, false);
  feed("levi_tables.txt", nullptr, true);
  atlas->finish_load();
  return atlas;
}

std::map<std::string, std::string> Atlas::dir_contents(const std::string& dir) {
  std::map<std::string, std::string> files;
  for (const char* name : {"weyl_factors.txt", "embeddings.txt", "maximals.txt",
                           "class_tables.txt", "levi_tables.txt"}) {
    std::ifstream in(dir + "/" + name);
    if (!in) throw input_error("cannot open data file: " + dir + "/" + name);
    std::ostringstream os;
    os << in.rdbuf();
    files[name] = os.str();
  }
  return files;
}

const Atlas& Atlas::get() {
  static std::once_flag flag;
  static std::unique_ptr<Atlas> instance;
  std::call_once(flag, [] {
    const char* dir = std::getenv("LIECF_DATA_DIR");
    if (dir && *dir)
      instance = from_contents(dir_contents(dir));
    else
      instance = from_contents(detail::embedded_data_files());
  });
  return *instance;
}

std::unique_ptr<Atlas> Atlas::load_custom(const std::string& data_dir,
                                          const std::string& db_path) {
  std::map<std::string, std::string> files;
  if (!data_dir.empty())
    files = dir_contents(data_dir);
  else
    files = detail::embedded_data_files();
  if (!db_path.empty()) {
    std::ifstream in(db_path);
    if (!in) throw input_error("cannot open modular db file: " + db_path);
    std::ostringstream os;
    os << in.rdbuf();
    files["weyl_factors.txt"] = os.str();
  }
  return from_contents(files);
}

// -------------------------------------------------------- embedding resolve

const EmbeddingSpec* Atlas::find_spec(const std::string& name) const {
  auto it = embeddings_.find(name);
  return it == embeddings_.end() ? nullptr : it->second.get();
}

namespace {

// Verify a user-ordered component base and report its type without
// reordering (the stored Bourbaki order is part of the dataset).
SimpleType ordered_component_type(const RootDatum& ambient,
                                  const std::vector<std::vector<int>>& roots) {
  auto classified = classify_base(ambient, roots);
  if (classified.size() != 1)
    throw data_error("subsystem component is not connected");
  SimpleType t = classified[0].type;
  // the stored order must already be a Bourbaki order
  const auto& std_cartan = RootDatum::get(t).cartan();
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = 0; j < roots.size(); ++j) {
      int pairing = ambient.pair_with_coroot(ambient.root_to_weight(roots[j]), roots[i]);
      if (pairing != std_cartan[i][j])
        throw data_error("subsystem base is not in Bourbaki order");
    }
  return t;
}

}  // namespace

Embedding Atlas::resolve_spec(const EmbeddingSpec& spec, int p) const {
  if (!spec.cond.allows(p))
    throw input_error("embedding " + spec.name + " is not defined at p=" + std::to_string(p));
  switch (spec.kind) {
    case EmbeddingSpec::Kind::Subsystem: {
      const RootDatum& ambient = RootDatum::get(spec.ambient);
      std::vector<SubsystemComponent> comps;
      for (const auto& roots : spec.base_components)
        comps.push_back(SubsystemComponent{ordered_component_type(ambient, roots), roots});
      return subsystem_embedding(ambient, comps, p);
    }
    case EmbeddingSpec::Kind::Classical: {
      FormalCharacter nat(GroupShape(spec.target.components, p));
      for (const auto& lab : spec.natural) {
        FormalCharacter wc = weyl_character(nat.group(), lab);
        for (const auto& [w, m] : wc.weights()) nat.add(w, m);
      }
      return classical_embedding(spec.ambient, nat, spec.swap_halfspins, p);
    }
    case EmbeddingSpec::Kind::Transporter: {
      if (spec.pinned_p && spec.pinned_p != p)
        throw input_error("transporter " + spec.name + " is pinned to p=" +
                          std::to_string(spec.pinned_p));
      GroupShape target(spec.target.components, p);
      GroupShape source({spec.ambient}, p);
      // Evaluate the raw characters of the data entries.
      std::function<FormalCharacter(const std::vector<EmbeddingSpec::Atom>&)> eval_atoms =
          [&](const std::vector<EmbeddingSpec::Atom>& atoms) {
            FormalCharacter acc(target);
            for (const auto& atom : atoms) {
              FormalCharacter one(target);
              if (atom.alt == 2) {
                one = alt_power(eval_atoms(atom.sub), 2);
              } else if (atom.weyl) {
                one = weyl_character(target, atom.label);
              } else {
                one = irr_char(target, atom.label, p, db_);
              }
              for (const auto& [w, m] : one.weights()) acc.add(w, m * atom.mult);
            }
            return acc;
          };
      std::map<Weight, FormalCharacter> raw;  // W(lambda) restrictions
      std::map<Weight, FormalCharacter> irr_entries;
      for (const auto& e : spec.entries) {
        FormalCharacter c = eval_atoms(e.atoms);
        if (e.irr_mode)
          irr_entries.emplace(e.source_label, std::move(c));
        else
          raw.emplace(e.source_label, std::move(c));
      }
      // Dual entries derived when absent.
      GroupShape src_shape({spec.ambient}, 0);
      for (auto coll : {&raw, &irr_entries}) {
        std::vector<std::pair<Weight, FormalCharacter>> extra;
        for (const auto& [lab, c] : *coll) {
          Weight dl = dual_weight(src_shape, lab);
          if (dl != lab && !coll->count(dl)) extra.emplace_back(dl, dual(c));
        }
        for (auto& [lab, c] : extra) coll->emplace(lab, std::move(c));
      }
      // Trivial label maps to the trivial character.
      Weight zero(spec.ambient.rank, 0);
      if (!raw.count(zero) && !irr_entries.count(zero))
        irr_entries.emplace(zero, trivial_character(target));
      // Resolve irreducible entries from Weyl-character entries:
      //   entry_V(l) = raw(l) - sum of entry_V over the other factors of
      //   W_source(l) at p.
      std::function<FormalCharacter(const Weight&)> entry_v = [&](const Weight& lab)
          -> FormalCharacter {
        auto it = irr_entries.find(lab);
        if (it != irr_entries.end()) return it->second;
        auto rit = raw.find(lab);
        if (rit == raw.end()) {
          // Twisted labels factor through their Steinberg pieces.
          if (p > 0) {
            auto split = steinberg_split(lab, p);
            if (!(split.size() == 1 && split[0].second == 0)) {
              FormalCharacter out = trivial_character(target);
              for (const auto& [part, r] : split)
                out = tensor(out, frobenius_twist(entry_v(part), r, p));
              irr_entries.emplace(lab, out);
              return out;
            }
          }
          throw data_error("transporter " + spec.name + ": no entry for " +
                           weight_to_string(lab));
        }
        FormalCharacter out = rit->second;
        if (p > 0) {
          FactorMultiset wf = weyl_factors(source, lab, p, db_);
          for (const auto& [w, m] : wf.factors) {
            if (w == lab) continue;
            FormalCharacter sub = entry_v(w);
            for (long long i = 0; i < m; ++i) out = subtract(out, sub);
          }
        }
        irr_entries.emplace(lab, out);
        return out;
      };
      for (const auto& [lab, c] : raw) {
        (void)c;
        entry_v(lab);
      }
      return transporter_embedding(source, target, p, std::move(irr_entries));
    }
  }
  throw data_error("unreachable embedding kind");
}

Embedding Atlas::embedding(const std::string& name, int p) const {
  const auto* spec = find_spec(name);
  if (!spec) throw input_error("unknown embedding: " + name);
  return resolve_spec(*spec, p);
}

// ------------------------------------------------------------- chain builds

namespace {

DiagramAut leg_aut(SimpleType t, const std::string& label_part, bool iota, int p) {
  std::vector<DiagramAut> candidates{DiagramAut::identity(t)};
  try {
    candidates.push_back(DiagramAut::duality(t));
  } catch (const input_error&) {}
  if (t.family == Family::D && t.rank == 4) {
    DiagramAut tau = DiagramAut::triality(t);
    candidates.push_back(tau);
    DiagramAut tau2 = tau;
    for (int i = 0; i < t.rank; ++i) tau2.perm[i] = tau.perm[tau.perm[i]];
    candidates.push_back(tau2);
  }
  if ((t.family == Family::B || t.family == Family::C) && t.rank == 2 && p == 2)
    candidates.push_back(DiagramAut::special_isogeny(t, 2));
  if (t.family == Family::G && p == 3)
    candidates.push_back(DiagramAut::special_isogeny(t, 3));
  Weight l1(t.rank, 0);
  l1[0] = 1;
  GroupShape g(t, 0);
  Weight want = parse_weight(label_part, g);
  for (const auto& aut : candidates) {
    if (iota) {
      if (!(t.family == Family::D)) continue;
      // iota marker: fork swap composed with the (identity-on-l1) choice
      DiagramAut io = DiagramAut::fork_swap(t);
      if (aut.is_identity() && io.apply(l1) == want) return io;
      continue;
    }
    if (aut.apply(l1) == want) return aut;
  }
  throw input_error("no diagram automorphism sends the first fundamental weight to " +
                    label_part + " for " + t.name());
}

}  // namespace

Embedding Atlas::chain_embedding(const ExpectedRow& row, int p,
                                 const std::map<char, int>& twists) const {
  GroupShape current({row.group}, p);
  std::optional<Embedding> acc;
  for (const auto& step : row.chain) {
    auto colon = step.find(':');
    std::string op = step.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : step.substr(colon + 1);
    std::optional<Embedding> next;
    if (op == "emb") {
      next.emplace(embedding(arg, p));
    } else if (op == "prod") {
      std::vector<Embedding> parts;
      std::stringstream ps(arg);
      std::string item;
      size_t ci = 0;
      while (std::getline(ps, item, '|')) {
        if (item == "id") {
          if (ci >= current.components.size()) throw input_error("prod step out of range");
          parts.push_back(identity_embedding(GroupShape(current.components[ci], p)));
          ++ci;
        } else {
          Embedding e = embedding(item, p);
          ci += e.source().components.size();
          parts.push_back(std::move(e));
        }
      }
      next.emplace(product_embedding(parts, p));
    } else if (op == "diag") {
      if (current.components.empty()) throw input_error("diag on empty group");
      SimpleType t = current.components[0];
      DiagonalSpec spec;
      spec.p = p;
      std::stringstream ls(arg);
      std::string leg;
      while (std::getline(ls, leg, ',')) {
        bool iota = false;
        auto brace = leg.find('{');
        if (brace != std::string::npos) {
          std::string marker = leg.substr(brace + 1, leg.find('}') - brace - 1);
          if (marker != "i") throw input_error("unknown aut marker: " + marker);
          iota = true;
          leg = leg.substr(0, brace) + leg.substr(leg.find('}') + 1);
        }
        int twist = 0;
        auto bracket = leg.find('[');
        if (bracket != std::string::npos) {
          std::string tv = leg.substr(bracket + 1, leg.find(']') - bracket - 1);
          if (tv.size() == 1 && std::isalpha(static_cast<unsigned char>(tv[0]))) {
            auto it = twists.find(tv[0]);
            if (it == twists.end())
              throw input_error(std::string("unbound twist variable ") + tv[0]);
            twist = it->second;
          } else {
            twist = std::stoi(tv);
          }
          leg = leg.substr(0, bracket);
        }
        spec.legs.push_back(DiagonalSpec::Leg{twist, leg_aut(t, leg, iota, p)});
      }
      if (spec.legs.size() != current.components.size())
        throw input_error("diag step arity mismatch");
      for (const auto& c : current.components)
        if (!(c == t)) throw input_error("diag needs equal-type components");
      next.emplace(diagonal_embedding(spec, t));
    } else if (op == "proj") {
      auto dash = arg.find('-');
      size_t a = std::stoul(arg.substr(0, dash));
      size_t b = std::stoul(arg.substr(dash + 1));
      next.emplace(factor_projection(current, a, b - a + 1, p));
    } else {
      throw input_error("unknown chain step: " + step);
    }
    if (!(next->source() == current))
      throw input_error("chain step " + step + " expects " + next->source().name() +
                        ", current group is " + current.name());
    current = GroupShape(next->target().components, p);
    if (acc)
      acc.emplace(compose_embeddings(*acc, *next));
    else
      acc = std::move(next);
  }
  if (!acc) throw input_error("row " + row.id + " has an empty chain");
  return *acc;
}

// ------------------------------------------------------------------ queries

std::vector<MaximalEntry> Atlas::maximal_subgroups(SimpleType g, int p) const {
  std::vector<MaximalEntry> out;
  for (const auto& e : all_maximals(g))
    if (e.cond.allows(p)) out.push_back(e);
  return out;
}

const std::vector<MaximalEntry>& Atlas::all_maximals(SimpleType g) const {
  static const std::vector<MaximalEntry> empty;
  auto it = maximals_.find({static_cast<char>(g.family), g.rank});
  return it == maximals_.end() ? empty : it->second;
}

// --------------------------------------------------------------------- levi

namespace {

// All diagram automorphisms (as label permutations) of a product shape:
// per-component automorphism choices composed with permutations of blocks of
// equal-type components.
std::vector<std::vector<int>> shape_label_perms(const GroupShape& shape) {
  int total = shape.total_rank();
  std::vector<std::vector<std::vector<int>>> comp_auts;  // per component
  for (const auto& t : shape.components) {
    std::vector<DiagramAut> auts{DiagramAut::identity(t)};
    try {
      auto d = DiagramAut::duality(t);
      auts.push_back(d);
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
  // offsets
  std::vector<int> offset(shape.components.size());
  int off = 0;
  for (size_t i = 0; i < shape.components.size(); ++i) {
    offset[i] = off;
    off += shape.components[i].rank;
  }
  // permutations of equal-type components
  std::vector<int> comp_order(shape.components.size());
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::vector<std::vector<int>> comp_perms;
  std::sort(comp_order.begin(), comp_order.end());
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
      std::vector<int> perm(total);
      for (size_t i = 0; i < shape.components.size(); ++i) {
        int tgt_comp = cp[i];
        const auto& aut = comp_auts[i][idx[i]];
        for (int k = 0; k < shape.components[i].rank; ++k)
          perm[offset[i] + k] = offset[tgt_comp] + aut[k];
      }
      out.push_back(std::move(perm));
      return;
    }
    for (idx[ci] = 0; idx[ci] < comp_auts[ci].size(); ++idx[ci]) rec(ci + 1, cp);
  };
  for (const auto& cp : comp_perms) rec(0, cp);
  return out;
}

FactorMultiset apply_label_perm(const FactorMultiset& f, const std::vector<int>& perm) {
  FactorMultiset out(f.group);
  for (const auto& [w, m] : f.factors) {
    Weight v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[perm[i]] = w[i];
    out.add(v, m);
  }
  return out;
}

}  // namespace

const std::vector<LeviClass>& Atlas::levi_subgroups(SimpleType g) const {
  std::lock_guard<std::mutex> lock(*levi_mutex_);
  auto key = std::make_pair(static_cast<char>(g.family), g.rank);
  auto it = levi_cache_.find(key);
  if (it != levi_cache_.end()) return it->second;

  const RootDatum& datum = RootDatum::get(g);
  GroupShape ambient(g, 0);
  Weight vmin_w = minimal_module_weight(g);
  Weight adj_w = adjoint_weight(g);
  FormalCharacter vmin_c = weyl_character(ambient, vmin_w);
  FormalCharacter adj_c = weyl_character(ambient, adj_w);
  ModularDB empty_db;

  std::vector<LeviClass> classes;
  std::set<std::string> seen;
  int n = datum.rank();
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> nodes;
    std::vector<std::vector<int>> base;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        nodes.push_back(i);
        std::vector<int> e(n, 0);
        e[i] = 1;
        base.push_back(std::move(e));
      }
    auto comps = classify_base(datum, base);
    bool has_a1 = false;
    for (const auto& c : comps)
      if (c.type.rank < 2) has_a1 = true;
    if (has_a1) continue;
    Embedding emb = subsystem_embedding(datum, comps, 0);
    FactorMultiset v0 = decompose(restrict_character(vmin_c, emb, 0, empty_db), 0, empty_db);
    FactorMultiset a0 = decompose(restrict_character(adj_c, emb, 0, empty_db), 0, empty_db);
    // Canonical form under the shape's diagram automorphisms.
    GroupShape shape(GroupShape(emb.target().components, 0));
    std::string canon;
    for (const auto& perm : shape_label_perms(shape)) {
      std::string s = shape.name() + "|" + apply_label_perm(v0, perm).to_string() + "|" +
                      apply_label_perm(a0, perm).to_string();
      if (canon.empty() || s < canon) canon = s;
    }
    if (!seen.insert(canon).second) continue;
    LeviClass lc;
    lc.shape = shape;
    lc.nodes = nodes;
    lc.vmin0 = v0;
    lc.adj0 = a0;
    classes.push_back(std::move(lc));
  }
  // Names: type shape with primes distinguishing repeats.
  std::map<std::string, int> counts;
  for (auto& lc : classes) {
    std::string base = lc.shape.name();
    int k = counts[base]++;
    lc.name = base + std::string(k, '\'');
  }
  return levi_cache_.emplace(key, std::move(classes)).first->second;
}

FactorMultiset Atlas::levi_factors(SimpleType g, const LeviClass& levi, const std::string& module,
                                   int p) const {
  const RootDatum& datum = RootDatum::get(g);
  std::vector<std::vector<int>> base;
  for (int i : levi.nodes) {
    std::vector<int> e(datum.rank(), 0);
    e[i] = 1;
    base.push_back(std::move(e));
  }
  Embedding emb = subsystem_embedding(datum, classify_base(datum, base), p);
  GroupShape ambient(g, p);
  Weight w = module == "vmin" ? minimal_module_weight(g) : adjoint_weight(g);
  return decompose(restrict_character(weyl_character(ambient, w), emb, p, db_), p, db_);
}

std::vector<ExpectedRow> Atlas::expected_rows(int table) const {
  std::vector<ExpectedRow> out;
  for (const auto& r : rows_)
    if (r.table == table) out.push_back(r);
  for (const auto& r : levi_rows_)
    if (r.table == table) out.push_back(r);
  return out;
}

Weight Atlas::minimal_module_weight(SimpleType g) {
  GroupShape shape(g, 0);
  switch (g.family) {
    case Family::G: return parse_weight("10", shape);
    case Family::F: return parse_weight("0001", shape);
    case Family::E:
      if (g.rank == 6) return parse_weight("100000", shape);
      if (g.rank == 7) return parse_weight("0000001", shape);
      return adjoint_weight(g);
    default: {
      Weight w(g.rank, 0);
      w[0] = 1;
      return w;
    }
  }
}

Weight Atlas::adjoint_weight(SimpleType g) {
  const RootDatum& d = RootDatum::get(g);
  return d.root_to_weight(d.highest_root());
}

}  // namespace liecf
