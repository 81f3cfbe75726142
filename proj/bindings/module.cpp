#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liecf/verify.hpp"

namespace py = pybind11;
using namespace liecf;

namespace {

std::map<std::string, long long> factors_dict(const FactorMultiset& f) {
  std::map<std::string, long long> out;
  for (const auto& [w, m] : f.factors) out[weight_to_string(w, f.group)] = m;
  return out;
}

}  // namespace

PYBIND11_MODULE(_liecf, m) {
  m.doc() = "exact Weyl characters, modular composition factors and branching";

  m.def("weyl_dim", [](const std::string& group, const std::string& weight) {
    GroupShape g = parse_group(group);
    return weyl_dim(g, parse_weight(weight, g));
  });

  m.def("irr_dim", [](const std::string& group, const std::string& weight, int p) {
    GroupShape g = parse_group(group, p);
    return irr_dim(g, parse_weight(weight, g), p, Atlas::get().db());
  });

  m.def("weyl_character", [](const std::string& group, const std::string& weight) {
    GroupShape g = parse_group(group);
    FormalCharacter c = weyl_character(g, parse_weight(weight, g));
    std::map<std::string, long long> out;
    for (const auto& [w, mult] : c.dominant_part()) out[weight_to_string(w, g)] = mult;
    return out;
  });

  m.def("decompose_weyl", [](const std::string& group, const std::string& weight, int p) {
    GroupShape g = parse_group(group, p);
    return factors_dict(weyl_factors(g, parse_weight(weight, g), p, Atlas::get().db()));
  });

  m.def("restrict_module",
        [](const std::string& group, const std::string& emb, const std::string& module_key,
           int p) {
          GroupShape g = parse_group(group, p);
          if (g.components.size() != 1) throw input_error("needs a simple ambient group");
          const Atlas& atlas = Atlas::get();
          Embedding e = atlas.embedding(emb, p);
          Weight w = module_key == "vmin" ? Atlas::minimal_module_weight(g.components[0])
                     : module_key == "adj" ? Atlas::adjoint_weight(g.components[0])
                                           : parse_weight(module_key, g);
          FactorMultiset top = weyl_factors(g, w, p, atlas.db());
          return factors_dict(restrict_factors(top, e, p, atlas.db()));
        });

  m.def("verify_tables", [](const std::string& group, int p) {
    GroupShape g = parse_group(group, p);
    VerifyOptions opts;
    opts.characteristics = {p};
    auto reports = verify_tables(g.components[0], opts, Atlas::get());
    int fails = 0, checked = 0;
    for (const auto& r : reports)
      if (r.checked) {
        ++checked;
        if (!r.pass) ++fails;
      }
    return py::make_tuple(checked, fails);
  });

  m.def("maximal_subgroups", [](const std::string& group, int p) {
    GroupShape g = parse_group(group, p);
    std::vector<std::string> out;
    for (const auto& e : Atlas::get().maximal_subgroups(g.components[0], p))
      out.push_back(e.name);
    return out;
  });

  m.def("levi_subgroups", [](const std::string& group) {
    GroupShape g = parse_group(group);
    std::vector<std::string> out;
    for (const auto& l : Atlas::get().levi_subgroups(g.components[0])) out.push_back(l.name);
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
