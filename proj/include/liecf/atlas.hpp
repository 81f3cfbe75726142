#pragma once

#include <memory>
#include <mutex>

#include "liecf/embedding.hpp"

namespace liecf {

// Characteristic condition attached to dataset rows ("any", "p=2", "p!=3",
// "p>3", "p>=5", "p=2|3").
struct PCondition {
  enum class Kind { Any, Eq, Neq, Ge, Gt, In };
  Kind kind = Kind::Any;
  std::vector<int> values;

  bool allows(int p) const;
  static PCondition parse(const std::string& s);
  std::string to_string() const;
};

// One multiplicand of a symbolic factor entry: an (optionally Weyl-marked,
// optionally twisted) label for one component of the target group.
struct FactorPiece {
  Weight label;
  bool weyl = false;
  char twist_var = 0;  // 'r','s','t' or 0
  int twist_const = 0;
};

// item ::= comp (',' comp)* ['^' mult]; comp ::= piece ('*' piece)*.
struct FactorExpr {
  std::vector<std::vector<FactorPiece>> comps;
  long long mult = 1;
};

std::vector<FactorExpr> parse_factor_list(const std::string& s, const GroupShape& target);

// Evaluate a symbolic factor list to concrete irreducible labels at
// characteristic p under a twist assignment; Weyl-marked pieces expand
// through the database first.
FactorMultiset evaluate_factor_list(const std::vector<FactorExpr>& exprs,
                                    const GroupShape& target, int p,
                                    const std::map<char, int>& twists, const ModularDB& db);

// Twist-variable discipline of a row family.
struct TwistSpec {
  std::vector<char> vars;   // in order of first use
  bool one_zero = false;    // the family constraint "rs = 0"
  // Concrete assignments induced by a base instantiation (r,s,t,...).
  std::vector<std::map<char, int>> assignments(const std::vector<int>& base) const;
};

struct MaximalEntry {
  SimpleType group;
  std::string name;       // e.g. "A2G2"
  GroupShape shape;
  PCondition cond;
  std::string embedding;  // key into the embedding registry
  std::vector<FactorExpr> vmin, adj;
};

struct ExpectedRow {
  int table = 0;
  std::string id;
  SimpleType group{Family::A, 1};
  GroupShape target;
  std::string descr;
  PCondition cond;
  TwistSpec twists;
  std::vector<std::string> chain;  // steps, ambient first
  // module key -> symbolic factors; keys: "vmin", "adj", "spin" (table 13)
  std::map<std::string, std::vector<FactorExpr>> expected;
  std::string note;  // free-form remark carried into reports
};

struct LeviClass {
  std::string name;            // type shape, primed on repeats ("A5", "A5'")
  GroupShape shape;
  std::vector<int> nodes;      // chosen simple-node subset (0-based)
  FactorMultiset vmin0, adj0;  // factor labels at p = 0
};

// The embedded dataset: modular database seed, maximal-subgroup entries,
// registered embeddings, classification tables and Levi tables.
class Atlas {
 public:
  // Loads the embedded copies of the data files (or the directory named by
  // LIECF_DATA_DIR when set); the instance is shared and immutable.
  static const Atlas& get();
  // Custom dataset: a data directory and/or a modular-db file override.
  static std::unique_ptr<Atlas> load_custom(const std::string& data_dir,
                                            const std::string& db_path);

  const ModularDB& db() const { return db_; }
  ModularDB seed_db() const { return db_; }

  std::vector<MaximalEntry> maximal_subgroups(SimpleType g, int p) const;
  const std::vector<MaximalEntry>& all_maximals(SimpleType g) const;

  const std::vector<LeviClass>& levi_subgroups(SimpleType g) const;
  // Factor labels of a Levi on V_min ("vmin") or the adjoint module at p.
  FactorMultiset levi_factors(SimpleType g, const LeviClass& levi, const std::string& module,
                              int p) const;

  std::vector<ExpectedRow> expected_rows(int table) const;
  const std::vector<ExpectedRow>& class_rows() const { return rows_; }
  const std::vector<ExpectedRow>& levi_rows() const { return levi_rows_; }

  // Resolve a registered embedding at characteristic p.
  Embedding embedding(const std::string& name, int p) const;
  // Build the full chain of an expected row at p under a twist assignment.
  Embedding chain_embedding(const ExpectedRow& row, int p,
                            const std::map<char, int>& twists) const;

  // Minimal module key per ambient group ("vmin" dimension sanity).
  static Weight minimal_module_weight(SimpleType g);
  static Weight adjoint_weight(SimpleType g);

 private:
  Atlas() = default;
  static std::unique_ptr<Atlas> from_contents(const std::map<std::string, std::string>& files);
  static std::map<std::string, std::string> dir_contents(const std::string& dir);
  void parse_embedding_line(const std::string& line);
  void parse_maximal_line(const std::string& line);
  void parse_class_row_line(const std::string& line, bool levi);
  void finish_load();
  const struct EmbeddingSpec* find_spec(const std::string& name) const;
  Embedding resolve_spec(const struct EmbeddingSpec& spec, int p) const;

  ModularDB db_;
  std::map<std::string, std::shared_ptr<struct EmbeddingSpec>> embeddings_;
  std::map<std::pair<char, int>, std::vector<MaximalEntry>> maximals_;
  std::vector<ExpectedRow> rows_;
  std::vector<ExpectedRow> levi_rows_;
  mutable std::map<std::pair<char, int>, std::vector<LeviClass>> levi_cache_;
  mutable std::unique_ptr<std::mutex> levi_mutex_ = std::make_unique<std::mutex>();
};

}  // namespace liecf
