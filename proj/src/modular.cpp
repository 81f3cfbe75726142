#include "liecf/modular.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace liecf {

void FactorMultiset::add(const Weight& w, long long m) {
  if (m == 0) return;
  auto [it, inserted] = factors.try_emplace(w, m);
  if (!inserted) {
    it->second += m;
    if (it->second == 0) factors.erase(it);
  }
}

long long FactorMultiset::total_multiplicity() const {
  long long t = 0;
  for (const auto& [w, m] : factors) t += m;
  return t;
}

std::string FactorMultiset::to_string() const {
  // Highest coroot height first, then lexicographically decreasing; matches
  // the order factors are peeled in.
  std::vector<std::pair<Weight, long long>> items(factors.begin(), factors.end());
  std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    long long ha = coroot_height(group, a.first), hb = coroot_height(group, b.first);
    if (ha != hb) return ha > hb;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [w, m] : items) {
    if (!out.empty()) out += ", ";
    out += weight_to_string(w, group);
    out += '^';
    out += std::to_string(m);
  }
  return out.empty() ? "-" : out;
}

void ModularDB::add_entry(SimpleType t, int p, const Weight& lambda,
                          const std::vector<std::pair<Weight, long long>>& factors) {
  entries_[Key{static_cast<char>(t.family), t.rank, p, lambda}] = factors;
}

const std::vector<std::pair<Weight, long long>>* ModularDB::find(SimpleType t, int p,
                                                                 const Weight& lambda) const {
  auto it = entries_.find(Key{static_cast<char>(t.family), t.rank, p, lambda});
  return it == entries_.end() ? nullptr : &it->second;
}

ModularDB ModularDB::parse(std::istream& in) {
  ModularDB db;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string fam, lam;
    int rank, p;
    if (!(ls >> fam >> rank >> p >> lam)) {
      // blank line
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok)
        throw input_error("modular db line " + std::to_string(lineno) + ": parse error");
      continue;
    }
    std::string colon;
    ls >> colon;
    if (colon != ":")
      throw input_error("modular db line " + std::to_string(lineno) + ": expected ':'");
    SimpleType type = parse_simple_type(fam + std::to_string(rank));
    GroupShape g(type, 0);
    Weight lambda = parse_weight(lam, g);
    std::string rest;
    std::getline(ls, rest);
    std::vector<std::pair<Weight, long long>> factors;
    std::istringstream fs(rest);
    std::string item;
    while (std::getline(fs, item, ',')) {
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      item = trim(item);
      if (item.empty()) continue;
      auto caret = item.find('^');
      long long m = 1;
      std::string ws = item;
      if (caret != std::string::npos) {
        ws = item.substr(0, caret);
        m = std::stoll(item.substr(caret + 1));
      }
      factors.emplace_back(parse_weight(ws, g), m);
    }
    if (factors.empty())
      throw input_error("modular db line " + std::to_string(lineno) + ": no factors");
    db.add_entry(type, p, lambda, factors);
  }
  return db;
}

ModularDB ModularDB::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open modular db file: " + path);
  return parse(in);
}

void ModularDB::merge(const ModularDB& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

void ModularDB::validate() const {
  for (const auto& [key, factors] : entries_) {
    SimpleType t(static_cast<Family>(key.family), key.rank);
    const RootDatum& datum = RootDatum::get(t);
    if (!is_prime(key.p)) throw data_error("modular db: non-prime characteristic");
    if (!is_dominant(datum, key.lambda)) throw data_error("modular db: non-dominant key");
    long long self = 0;
    for (const auto& [w, m] : factors) {
      if (m <= 0) throw data_error("modular db: non-positive multiplicity");
      if (!is_dominant(datum, w)) throw data_error("modular db: non-dominant factor");
      if (w == key.lambda) {
        self += m;
      } else if (!datum.dominates(key.lambda, w) ||
                 datum.coroot_height(w) >= datum.coroot_height(key.lambda)) {
        throw data_error("modular db: factor not strictly below " +
                         weight_to_string(key.lambda));
      }
    }
    if (self != 1)
      throw data_error("modular db: entry for " + weight_to_string(key.lambda) +
                       " must contain the highest weight exactly once");
  }
}

Weight twist_weight(const Weight& w, int r, int p) {
  if (r == 0) return w;
  if (!is_prime(p)) throw input_error("frobenius twist needs a prime characteristic");
  long long scale = 1;
  for (int i = 0; i < r; ++i) scale *= p;
  Weight v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[i] = static_cast<int>(w[i] * scale);
  return v;
}

FormalCharacter frobenius_twist(const FormalCharacter& a, int r, int p) {
  if (r < 0) throw input_error("negative twist");
  if (r == 0) return a;
  if (!is_prime(p)) throw input_error("frobenius twist needs a prime characteristic");
  FormalCharacter out(a.group());
  for (const auto& [w, m] : a.weights()) out.add(twist_weight(w, r, p), m);
  return out;
}

bool is_restricted(const Weight& lambda, int p) {
  if (p == 0) return true;
  return std::all_of(lambda.begin(), lambda.end(), [&](int x) { return x >= 0 && x < p; });
}

std::vector<std::pair<Weight, int>> steinberg_split(const Weight& lambda, int p) {
  if (!is_prime(p)) throw input_error("steinberg_split needs a prime characteristic");
  for (int x : lambda)
    if (x < 0) throw input_error("steinberg_split needs a dominant weight");
  std::vector<std::pair<Weight, int>> out;
  Weight rem = lambda;
  int r = 0;
  while (std::any_of(rem.begin(), rem.end(), [](int x) { return x != 0; })) {
    Weight digit(rem.size());
    bool nonzero = false;
    for (size_t i = 0; i < rem.size(); ++i) {
      digit[i] = rem[i] % p;
      rem[i] /= p;
      if (digit[i]) nonzero = true;
    }
    if (nonzero) out.emplace_back(digit, r);
    ++r;
  }
  return out;
}

namespace {

FormalCharacter restricted_irr_char_simple(SimpleType t, const Weight& lambda, int p,
                                           const ModularDB& db);

// Component-level irreducible character at characteristic p (lambda may be
// non-restricted; handled through the Steinberg factorisation).
FormalCharacter irr_char_simple(SimpleType t, const Weight& lambda, int p, const ModularDB& db) {
  GroupShape g(t, p);
  if (p == 0) return weyl_character(g, lambda);
  auto split = steinberg_split(lambda, p);
  FormalCharacter out = trivial_character(g);
  for (const auto& [part, r] : split)
    out = tensor(out, frobenius_twist(restricted_irr_char_simple(t, part, p, db), r, p));
  return out;
}

FormalCharacter restricted_irr_char_simple(SimpleType t, const Weight& lambda, int p,
                                           const ModularDB& db) {
  GroupShape g(t, p);
  const auto* entry = db.find(t, p, lambda);
  if (!entry) {
    if (db.mode() == ModularDB::Mode::Strict)
      throw unknown_character_error("no modular db entry for " + t.name() + " p=" +
                                    std::to_string(p) + " " + weight_to_string(lambda));
    return weyl_character(g, lambda);
  }
  FormalCharacter out = weyl_character(g, lambda);
  for (const auto& [w, m] : *entry) {
    if (w == lambda) continue;
    FormalCharacter sub = irr_char_simple(t, w, p, db);
    try {
      for (long long i = 0; i < m; ++i) out = subtract(out, sub);
    } catch (const data_error&) {
      throw inconsistent_db_error("inconsistent modular db entry for " + t.name() + " p=" +
                                  std::to_string(p) + " " + weight_to_string(lambda));
    }
  }
  return out;
}

struct IrrKey {
  char family;
  int rank;
  int p;
  Weight lambda;
  auto operator<=>(const IrrKey&) const = default;
};

const FormalCharacter& irr_char_simple_cached(SimpleType t, const Weight& lambda, int p,
                                              const ModularDB& db) {
  static std::mutex mu;
  // Cache is keyed per db instance address as well; verification runs use a
  // single seeded db, so this stays small.
  static std::map<std::pair<const void*, IrrKey>, FormalCharacter> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<const void*>(&db),
                            IrrKey{static_cast<char>(t.family), t.rank, p, lambda});
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, irr_char_simple(t, lambda, p, db)).first;
  return it->second;
}

}  // namespace

FormalCharacter irr_char(const GroupShape& g, const Weight& lambda, int p, const ModularDB& db) {
  if (static_cast<int>(lambda.size()) != g.total_rank())
    throw input_error("weight length mismatch");
  if (!is_dominant(g, lambda)) throw input_error("irr_char requires a dominant weight");
  FormalCharacter result;
  size_t pos = 0;
  bool first = true;
  for (const auto& t : g.components) {
    Weight part(lambda.begin() + pos, lambda.begin() + pos + t.rank);
    pos += t.rank;
    FormalCharacter comp = irr_char_simple_cached(t, part, p, db);
    result = first ? std::move(comp) : outer_tensor(result, comp, p);
    first = false;
  }
  FormalCharacter out(g);
  for (const auto& [w, m] : result.weights()) out.add(w, m);
  return out;
}

unsigned long long irr_dim(const GroupShape& g, const Weight& lambda, int p,
                           const ModularDB& db) {
  return static_cast<unsigned long long>(irr_char(g, lambda, p, db).dim());
}

FactorMultiset decompose(const FormalCharacter& a, int p, const ModularDB& db) {
  FactorMultiset out(a.group());
  FormalCharacter rem = a;
  while (!rem.empty()) {
    // Maximal coroot height, lexicographically greatest on ties.
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
    long long m = rem.multiplicity(lambda);
    if (!is_dominant(a.group(), lambda) || m < 0)
      throw inconsistent_db_error("decompose: input is not a character (offending weight " +
                                  weight_to_string(lambda) + ")");
    FormalCharacter ic = irr_char(a.group(), lambda, p, db);
    try {
      for (long long i = 0; i < m; ++i) rem = subtract(rem, ic);
    } catch (const data_error&) {
      throw inconsistent_db_error("decompose: negative multiplicity while peeling " +
                                  weight_to_string(lambda));
    }
    out.add(lambda, m);
  }
  return out;
}

FactorMultiset weyl_factors(const GroupShape& g, const Weight& lambda, int p,
                            const ModularDB& db) {
  if (p == 0) {
    FactorMultiset out(g);
    out.add(lambda, 1);
    return out;
  }
  return decompose(weyl_character(g, lambda), p, db);
}

long long factor_dim(const FactorMultiset& f, int p, const ModularDB& db) {
  long long d = 0;
  for (const auto& [w, m] : f.factors)
    d += m * static_cast<long long>(irr_dim(f.group, w, p, db));
  return d;
}

FormalCharacter factor_character(const FactorMultiset& f, int p, const ModularDB& db) {
  FormalCharacter out(f.group);
  for (const auto& [w, m] : f.factors) {
    FormalCharacter ic = irr_char(f.group, w, p, db);
    for (const auto& [v, k] : ic.weights()) out.add(v, k * m);
  }
  return out;
}

}  // namespace liecf
