#pragma once

// JSON (de)serialization for the shared interchange formats:
//   kripke   {"type":"kripke","worlds":N,"edges":[[i,j],...]}
//   nbd      {"type":"nbd","worlds":N,"dia":[m0,m1,...]}   (dia[s] = bitmask)
//   model    {"frame":...,"valuation":{"p":[0,2],...}}
//   relation {"left":N,"right":M,"pairs":[[i,j],...]}
//   tau      {"pos":["p"],"neg":["q"]}

#include <json.hpp>

#include "modlab/product.hpp"
#include "modlab/structures.hpp"

namespace modlab::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& m) : std::runtime_error(m) {}
};

json worlds_of_mask(Mask m);
Mask mask_of_worlds(const json& arr, int universe, const std::string& field);

json frame_to_json(const Frame& f);
Frame frame_from_json(const json& j);

json valuation_to_json(const Valuation& v);
Valuation valuation_from_json(const json& j, int worlds);

json model_to_json(const Model& m);
Model model_from_json(const json& j);

json relation_to_json(const Relation& z);
Relation relation_from_json(const json& j);

json tau_to_json(const LiteralSet& tau);
LiteralSet tau_from_json(const json& j);

// Neighborhood frame plus a carrier annex and projection arrays.
json product_to_json(const BisimProduct& p);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace modlab::io
