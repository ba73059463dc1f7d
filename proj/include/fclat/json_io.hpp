#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fclat/distributivity.hpp"
#include "fclat/errors.hpp"
#include "fclat/lattice.hpp"
#include "fclat/poset.hpp"
#include "fclat/rises.hpp"

namespace fclat {

using ordered_json = nlohmann::ordered_json;

inline ordered_json names_of(const Bitset& set, const std::vector<std::string>& names) {
    ordered_json arr = ordered_json::array();
    set.for_each_set([&](std::size_t i) { arr.push_back(names[i]); });
    return arr;
}

inline ordered_json report_to_json(const RiseReport& rep, const LatticeElementStats& stats) {
    ordered_json j;
    j["lattice_size"] = rep.lattice_size;
    j["cover_count"] = rep.cover_count;
    j["nur_join"] = {{"abs", rep.nur_join_abs}, {"rel", rep.nur_join_rel}};
    j["nur_meet"] = {{"abs", rep.nur_meet_abs}, {"rel", rep.nur_meet_rel}};
    j["atoms"] = {{"nonunit_meet", rep.atoms_nonunit_meet}, {"count", rep.atom_count}};
    j["coatoms"] = {{"nonunit_join", rep.coatoms_nonunit_join}, {"count", rep.coatom_count}};
    ordered_json covers = ordered_json::array();
    for (const CoverRise& c : rep.per_cover_rises)
        covers.push_back({{"lower", c.lower},
                          {"upper", c.upper},
                          {"delta_j", c.delta_j},
                          {"delta_m", c.delta_m},
                          {"lower_height", stats.height[c.lower]}});
    j["covers"] = std::move(covers);
    ordered_json bh_meet = ordered_json::object(), bh_join = ordered_json::object();
    for (auto& [h, b] : rep.by_height_meet)
        bh_meet[std::to_string(h)] = {{"nonunit", b.nonunit}, {"total", b.total}};
    for (auto& [h, b] : rep.by_height_join)
        bh_join[std::to_string(h)] = {{"nonunit", b.nonunit}, {"total", b.total}};
    j["by_height"] = {{"meet", std::move(bh_meet)}, {"join", std::move(bh_join)}};
    return j;
}

inline ordered_json witness_to_json(const ConceptLattice& lat, const SublatticeWitness& w,
                                    const std::vector<std::string>* objects = nullptr,
                                    const std::vector<std::string>* attributes = nullptr) {
    ordered_json j;
    j["pattern"] = pattern_name(w.pattern);
    ordered_json roles = ordered_json::object();
    for (std::size_t i = 0; i < w.elements.size(); ++i) roles[w.role_names[i]] = w.elements[i];
    j["roles"] = std::move(roles);
    j["elements"] = w.elements;
    ordered_json ext = ordered_json::array(), in = ordered_json::array();
    for (std::size_t e : w.elements) {
        ext.push_back(objects ? names_of(lat.extent(e), *objects)
                              : ordered_json(lat.extent(e).to_indices()));
        in.push_back(attributes ? names_of(lat.intent(e), *attributes)
                                : ordered_json(lat.intent(e).to_indices()));
    }
    j["extents"] = std::move(ext);
    j["intents"] = std::move(in);
    return j;
}

inline ordered_json verdict_to_json(const DistributivityVerdict& v, const ConceptLattice& lat,
                                    const std::vector<std::string>* objects = nullptr,
                                    const std::vector<std::string>* attributes = nullptr) {
    ordered_json j;
    j["distributive"] = v.distributive;
    j["join_distributive"] = v.join_distributive;
    j["meet_distributive"] = v.meet_distributive;
    j["modular"] = v.modular;
    j["semimodular"] = v.semimodular;
    j["dually_semimodular"] = v.dually_semimodular;
    j["modular_method"] = v.modular_method;
    ordered_json ma = ordered_json::object();
    for (auto& [k, b] : v.method_agreement) ma[k] = b;
    j["method_agreement"] = std::move(ma);
    if (v.witness) j["witness"] = witness_to_json(lat, *v.witness, objects, attributes);
    return j;
}

inline ordered_json lattice_to_json(const ConceptLattice& lat,
                                    const std::vector<std::string>& objects,
                                    const std::vector<std::string>& attributes) {
    ordered_json j;
    j["size"] = lat.size();
    j["top"] = lat.top_index;
    j["bottom"] = lat.bottom_index;
    ordered_json concepts = ordered_json::array();
    for (std::size_t i = 0; i < lat.size(); ++i)
        concepts.push_back({{"extent", names_of(lat.extent(i), objects)},
                            {"intent", names_of(lat.intent(i), attributes)}});
    j["concepts"] = std::move(concepts);
    ordered_json covers = ordered_json::array();
    for (auto [lo, up] : lat.covers) covers.push_back({lo, up});
    j["covers"] = std::move(covers);
    j["join_irreducible"] = lat.join_irreducible.to_indices();
    j["meet_irreducible"] = lat.meet_irreducible.to_indices();
    return j;
}

// ---------------------------------------------------------------------------
// Poset JSON: {"elements": [names], "relation": [[a, b], ...]} with a <= b.
// ---------------------------------------------------------------------------

inline Poset parse_poset_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid poset JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
        throw parse_error("poset JSON needs an 'elements' array");
    std::vector<std::string> names;
    for (const auto& e : j["elements"]) {
        if (!e.is_string()) throw parse_error("poset elements must be strings");
        names.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    if (j.contains("relation")) {
        if (!j["relation"].is_array()) throw parse_error("poset relation must be an array");
        for (const auto& p : j["relation"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw parse_error("poset relation entries must be [name, name] pairs");
            pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
    }
    try {
        return poset_from_relation(std::move(names), pairs);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

inline ordered_json poset_to_json(const Poset& p) {
    ordered_json j;
    j["elements"] = p.names();
    ordered_json rel = ordered_json::array();
    for (auto [a, b] : p.covers()) rel.push_back({p.names()[a], p.names()[b]});
    j["relation"] = std::move(rel);
    return j;
}

inline ordered_json dm_to_json(const DmCompletion& dm, const Poset& p) {
    ordered_json j;
    j["lattice"] = lattice_to_json(dm.lattice, p.names(), p.names());
    ordered_json iota = ordered_json::object();
    for (std::size_t x = 0; x < p.size(); ++x) iota[p.names()[x]] = dm.iota[x];
    j["iota"] = std::move(iota);
    j["added"] = dm.added;
    return j;
}

}  // namespace fclat
