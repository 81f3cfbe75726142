// liecf: exact-arithmetic queries and verification runs for characters,
// characteristic-p composition factors and restriction along embeddings.

#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "liecf/verify.hpp"

using namespace liecf;

namespace {

struct Common {
  std::string group;
  int p = 0;
  std::string format = "text";
  std::string db_path;
  std::string data_dir;
  std::string twists = "1,2,3";
  int jobs = 1;
};

std::vector<int> parse_twist_base(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) {
        auto eq = cur.find('=');
        out.push_back(std::stoi(eq == std::string::npos ? cur : cur.substr(eq + 1)));
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw input_error("empty twist instantiation");
  return out;
}

const Atlas& atlas_for(const Common& c, std::unique_ptr<Atlas>& holder) {
  if (c.db_path.empty() && c.data_dir.empty()) return Atlas::get();
  holder = Atlas::load_custom(c.data_dir, c.db_path);
  return *holder;
}

void add_common(CLI::App* cmd, Common& c, bool with_p = true) {
  cmd->add_option("--group", c.group, "group, e.g. E6, A2, A2G2")->required();
  if (with_p) cmd->add_option("--p", c.p, "characteristic (0 = characteristic zero)");
  cmd->add_option("--format", c.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--db", c.db_path, "override the modular factor database file");
  cmd->add_option("--data-dir", c.data_dir, "override the dataset directory");
}

std::string factors_text(const FactorMultiset& f) { return f.to_string(); }

nlohmann::json factors_json(const FactorMultiset& f) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [w, m] : f.factors) obj[weight_to_string(w, f.group)] = m;
  return obj;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact character and composition-factor computations"};
  app.require_subcommand(1);

  Common c;
  std::string weight_str, weight_b, emb_name, chain_str, module_key = "adj";
  std::string row_id, xtype_str, adj_str, vmin_str;
  std::vector<int> tables;
  bool distinctness = false;
  bool do_decompose = false;
  int alt_k = 0;

  auto* dim = app.add_subcommand("dim", "dimension of W(lambda), or of V(lambda) at p");
  add_common(dim, c);
  dim->add_option("--weight", weight_str)->required();

  auto* chr = app.add_subcommand("char", "dominant weight multiplicities of a character");
  add_common(chr, c);
  chr->add_option("--weight", weight_str)->required();
  chr->add_option("--alt", alt_k, "exterior power to apply");

  auto* ten = app.add_subcommand("tensor", "tensor product of two Weyl characters");
  add_common(ten, c);
  ten->add_option("--a", weight_str)->required();
  ten->add_option("--b", weight_b)->required();
  ten->add_flag("--decompose", do_decompose, "decompose into factors at p");

  auto* res = app.add_subcommand("restrict", "restrict a module along an embedding chain");
  add_common(res, c);
  res->add_option("--emb", emb_name, "registered embedding name (see docs/formats.md)");
  res->add_option("--chain", chain_str, "chain steps 'emb:..;diag:..' (overrides --emb)");
  res->add_option("--module", module_key, "vmin|adj|spin or a weight string");
  res->add_option("--twists", c.twists, "twist instantiation, e.g. r=1,s=2");

  auto* dec = app.add_subcommand("decompose", "composition factors of a Weyl module at p");
  add_common(dec, c);
  dec->add_option("--weyl", weight_str)->required();

  auto* scr = app.add_subcommand("screen", "irreducibility screen for a subgroup's factors");
  add_common(scr, c);
  scr->add_option("--row", row_id, "screen a classification-table row");
  scr->add_option("--twists", c.twists);
  scr->add_option("--xtype", xtype_str, "subgroup type for raw factor input");
  scr->add_option("--adj", adj_str, "adjoint factors, e.g. 11^3,00^2");
  scr->add_option("--vmin", vmin_str, "minimal-module factors");

  auto* ver = app.add_subcommand("verify", "recompute tables and diff against the dataset");
  add_common(ver, c);
  ver->add_option("--tables", tables, "restrict to these table ids");
  ver->add_option("--twists", c.twists, "twist instantiation, e.g. 1,2 or r=1,s=2");
  ver->add_option("--jobs", c.jobs, "parallel row verification");
  ver->add_flag("--distinctness", distinctness, "also compare adjoint factors across rows");
  bool all_p = false;
  ver->add_flag("--all-p", all_p, "run p in {0,2,3,5,7} (default: only --p)");

  auto* lsm = app.add_subcommand("list-maximals", "maximal-subgroup entries of a group");
  add_common(lsm, c);

  auto* lsl = app.add_subcommand("list-levis", "Levi subgroups with rank >= 2 factors");
  add_common(lsl, c);

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<Atlas> holder;
  try {
    const Atlas& atlas = atlas_for(c, holder);
    GroupShape group = parse_group(c.group, c.p);

    if (*dim) {
      Weight w = parse_weight(weight_str, group);
      unsigned long long d =
          c.p == 0 ? weyl_dim(group, w) : irr_dim(group, w, c.p, atlas.db());
      if (c.format == "json")
        std::cout << nlohmann::json{{"dim", d}} << "\n";
      else
        std::cout << d << "\n";
      return 0;
    }
    if (*chr) {
      Weight w = parse_weight(weight_str, group);
      FormalCharacter ch = c.p == 0 ? weyl_character(group, w)
                                    : irr_char(group, w, c.p, atlas.db());
      if (alt_k > 0) ch = alt_power(ch, alt_k);
      if (c.format == "json") {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [v, m] : ch.dominant_part()) obj[weight_to_string(v, group)] = m;
        std::cout << nlohmann::json{{"dim", ch.dim()}, {"dominant", obj}} << "\n";
      } else {
        std::cout << "dim " << ch.dim() << "\n";
        for (const auto& [v, m] : ch.dominant_part())
          std::cout << weight_to_string(v, group) << " : " << m << "\n";
      }
      return 0;
    }
    if (*ten) {
      FormalCharacter a = weyl_character(group, parse_weight(weight_str, group));
      FormalCharacter b = weyl_character(group, parse_weight(weight_b, group));
      FormalCharacter t = tensor(a, b);
      if (do_decompose) {
        FactorMultiset f = decompose(t, c.p, atlas.db());
        if (c.format == "json")
          std::cout << factors_json(f) << "\n";
        else
          std::cout << factors_text(f) << "\n";
      } else {
        std::cout << "dim " << t.dim() << "\n";
      }
      return 0;
    }
    if (*dec) {
      FactorMultiset f = weyl_factors(group, parse_weight(weight_str, group), c.p, atlas.db());
      if (c.format == "json")
        std::cout << factors_json(f) << "\n";
      else
        std::cout << factors_text(f) << "\n";
      return 0;
    }
    if (*res) {
      if (group.components.size() != 1) throw input_error("restrict needs a simple group");
      SimpleType g = group.components[0];
      ExpectedRow row;
      row.group = g;
      row.id = "(cli)";
      if (!chain_str.empty()) {
        std::stringstream cs(chain_str);
        std::string step;
        while (std::getline(cs, step, ';')) row.chain.push_back(step);
      } else if (!emb_name.empty()) {
        row.chain.push_back("emb:" + emb_name);
      } else {
        throw input_error("restrict needs --emb or --chain");
      }
      auto base = parse_twist_base(c.twists);
      std::map<char, int> assign;
      const char* names = "rstu";
      for (size_t i = 0; i < base.size() && i < 4; ++i) assign[names[i]] = base[i];
      Embedding chain = atlas.chain_embedding(row, c.p, assign);
      Weight w;
      if (module_key == "vmin")
        w = Atlas::minimal_module_weight(g);
      else if (module_key == "adj")
        w = Atlas::adjoint_weight(g);
      else if (module_key == "spin") {
        w = Weight(g.rank, 0);
        w[g.rank - 2] = 1;
      } else {
        w = parse_weight(module_key, group);
      }
      FactorMultiset top = weyl_factors(GroupShape(g, c.p), w, c.p, atlas.db());
      FactorMultiset f = restrict_factors(top, chain, c.p, atlas.db());
      if (c.format == "json")
        std::cout << factors_json(f) << "\n";
      else
        std::cout << factors_text(f) << "\n";
      return 0;
    }
    if (*scr) {
      if (group.components.size() != 1) throw input_error("screen needs a simple ambient group");
      SimpleType g = group.components[0];
      ScreenVerdict verdict;
      if (!row_id.empty()) {
        const ExpectedRow* row = nullptr;
        for (const auto& r : atlas.class_rows())
          if (r.id == row_id && r.group == g) row = &r;
        if (!row) throw input_error("unknown row id: " + row_id);
        auto base = parse_twist_base(c.twists);
        auto assigns = row->twists.assignments(base);
        auto factors = computed_row_factors(*row, c.p, assigns.front(), atlas);
        bool has_vmin = factors.count("vmin") > 0;
        verdict = screen_irreducibility(g, c.p, row->target.components[0], factors.at("adj"),
                                        has_vmin ? &factors.at("vmin") : nullptr, atlas);
      } else {
        if (xtype_str.empty() || adj_str.empty())
          throw input_error("screen needs --row or --xtype with --adj");
        SimpleType xt = parse_simple_type(xtype_str);
        GroupShape xg(xt, c.p);
        auto parse_fm = [&](const std::string& s) {
          FactorMultiset f(xg);
          std::stringstream ss(s);
          std::string item;
          while (std::getline(ss, item, ',')) {
            auto caret = item.find('^');
            long long m = 1;
            std::string ws = item;
            if (caret != std::string::npos) {
              ws = item.substr(0, caret);
              m = std::stoll(item.substr(caret + 1));
            }
            f.add(parse_weight(ws, xg), m);
          }
          return f;
        };
        FactorMultiset adj = parse_fm(adj_str);
        std::optional<FactorMultiset> vmin;
        if (!vmin_str.empty()) vmin = parse_fm(vmin_str);
        verdict = screen_irreducibility(g, c.p, xt, adj, vmin ? &*vmin : nullptr, atlas);
      }
      if (c.format == "json") {
        std::cout << nlohmann::json{{"verdict", verdict.irreducible() ? "irreducible"
                                                                      : "possibly-reducible"},
                                    {"detail", verdict.to_string()},
                                    {"witnesses", verdict.witnesses}}
                  << "\n";
      } else {
        std::cout << verdict.to_string() << "\n";
      }
      return 0;
    }
    if (*ver) {
      if (group.components.size() != 1) throw input_error("verify needs a simple group");
      SimpleType g = group.components[0];
      VerifyOptions opts;
      opts.tables = tables;
      opts.jobs = c.jobs;
      opts.twist_base = parse_twist_base(c.twists);
      if (!all_p) opts.characteristics = {c.p};
      auto reports = verify_tables(g, opts, atlas);
      int fails = 0;
      for (const auto& r : reports)
        if (r.checked && !r.pass) ++fails;
      nlohmann::json extra;
      if (distinctness) {
        auto d = check_factor_distinctness(g, opts, atlas);
        for (const auto& rep : d) {
          nlohmann::json pairs = nlohmann::json::array();
          for (const auto& [a, b] : rep.coincidences) pairs.push_back({a, b});
          extra.push_back({{"p", rep.p}, {"coincidences", pairs}});
          if (c.format == "text") {
            std::cout << "distinctness p=" << rep.p << ": " << rep.coincidences.size()
                      << " coinciding pair(s)";
            for (const auto& [a, b] : rep.coincidences) std::cout << " (" << a << "," << b << ")";
            std::cout << "\n";
          }
        }
      }
      if (c.format == "json") {
        nlohmann::json out;
        out["rows"] = nlohmann::json::parse(render_reports_json(reports));
        if (distinctness) out["distinctness"] = extra;
        out["failures"] = fails;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << render_reports_text(reports);
      }
      return fails ? 1 : 0;
    }
    if (*lsm) {
      for (const auto& e : atlas.maximal_subgroups(group.components[0], c.p)) {
        std::cout << e.name << "  (" << e.cond.to_string() << ")\n";
      }
      return 0;
    }
    if (*lsl) {
      for (const auto& l : atlas.levi_subgroups(group.components[0])) {
        std::cout << l.name << " : vmin " << l.vmin0.to_string() << " | adj "
                  << l.adj0.to_string() << "\n";
      }
      return 0;
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
