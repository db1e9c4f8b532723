#include "modlab/json_io.hpp"

#include <fstream>

namespace modlab::io {

namespace {

int get_int(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw FormatError("missing or non-integer field \"" + field + "\"");
    return j[field].get<int>();
}

} // namespace

json worlds_of_mask(Mask m) {
    json arr = json::array();
    for (int w = 0; w < 32; w++)
        if ((m >> w) & 1) arr.push_back(w);
    return arr;
}

Mask mask_of_worlds(const json& arr, int universe, const std::string& field) {
    if (!arr.is_array()) throw FormatError("field \"" + field + "\" must be an array of worlds");
    Mask m = 0;
    for (const auto& e : arr) {
        if (!e.is_number_integer())
            throw FormatError("field \"" + field + "\" contains a non-integer world");
        int w = e.get<int>();
        if (w < 0 || w >= universe)
            throw FormatError("field \"" + field + "\": world " + std::to_string(w) +
                              " out of range 0.." + std::to_string(universe - 1));
        m |= Mask(1) << w;
    }
    return m;
}

json frame_to_json(const Frame& f) {
    json j;
    if (is_kripke(f)) {
        const auto& k = std::get<KripkeFrame>(f);
        j["type"] = "kripke";
        j["worlds"] = k.size;
        json edges = json::array();
        for (auto [a, b] : k.r.pairs()) edges.push_back(json::array({a, b}));
        j["edges"] = std::move(edges);
    } else {
        const auto& nf = std::get<NbdFrame>(f);
        j["type"] = "nbd";
        j["worlds"] = nf.size;
        j["dia"] = nf.dia;
    }
    return j;
}

Frame frame_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw FormatError("frame: missing string field \"type\"");
    std::string type = j["type"].get<std::string>();
    int worlds = get_int(j, "worlds");
    if (worlds < 0 || worlds > 31) throw FormatError("frame: field \"worlds\" out of range 0..31");
    if (type == "kripke") {
        if (!j.contains("edges") || !j["edges"].is_array())
            throw FormatError("kripke frame: missing array field \"edges\"");
        Relation r(worlds, worlds);
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw FormatError("kripke frame: field \"edges\" entries must be [i,j] pairs");
            int a = e[0].get<int>(), b = e[1].get<int>();
            if (a < 0 || a >= worlds || b < 0 || b >= worlds)
                throw FormatError("kripke frame: edge [" + std::to_string(a) + "," +
                                  std::to_string(b) + "] out of range");
            r.add(a, b);
        }
        return KripkeFrame(worlds, std::move(r));
    }
    if (type == "nbd") {
        if (!j.contains("dia") || !j["dia"].is_array())
            throw FormatError("nbd frame: missing array field \"dia\"");
        if (j["dia"].size() != (size_t(1) << worlds))
            throw FormatError("nbd frame: field \"dia\" must have 2^worlds entries");
        std::vector<Mask> table;
        for (const auto& e : j["dia"]) {
            if (!e.is_number_integer())
                throw FormatError("nbd frame: field \"dia\" entries must be bitmask integers");
            auto v = e.get<int64_t>();
            if (v < 0 || v > int64_t(full_mask(worlds)))
                throw FormatError("nbd frame: field \"dia\" entry out of range");
            table.push_back(Mask(v));
        }
        return NbdFrame(worlds, std::move(table));
    }
    throw FormatError("frame: field \"type\" must be \"kripke\" or \"nbd\"");
}

json valuation_to_json(const Valuation& v) {
    json j = json::object();
    for (const auto& [name, mask] : v.assign) j[name] = worlds_of_mask(mask);
    return j;
}

Valuation valuation_from_json(const json& j, int worlds) {
    if (!j.is_object()) throw FormatError("field \"valuation\" must be an object");
    Valuation v;
    for (auto it = j.begin(); it != j.end(); ++it)
        v.assign[it.key()] = mask_of_worlds(it.value(), worlds, "valuation." + it.key());
    return v;
}

json model_to_json(const Model& m) {
    return json{{"frame", frame_to_json(m.frame)}, {"valuation", valuation_to_json(m.val)}};
}

Model model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("frame")) throw FormatError("model: missing field \"frame\"");
    Model m;
    m.frame = frame_from_json(j["frame"]);
    if (j.contains("valuation")) m.val = valuation_from_json(j["valuation"], frame_size(m.frame));
    return m;
}

json relation_to_json(const Relation& z) {
    json pairs = json::array();
    for (auto [a, b] : z.pairs()) pairs.push_back(json::array({a, b}));
    return json{{"left", z.left}, {"right", z.right}, {"pairs", std::move(pairs)}};
}

Relation relation_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("relation: expected an object");
    int left = get_int(j, "left"), right = get_int(j, "right");
    if (left < 0 || left > 31 || right < 0 || right > 31)
        throw FormatError("relation: fields \"left\"/\"right\" out of range 0..31");
    if (!j.contains("pairs") || !j["pairs"].is_array())
        throw FormatError("relation: missing array field \"pairs\"");
    Relation z(left, right);
    for (const auto& e : j["pairs"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw FormatError("relation: field \"pairs\" entries must be [i,j] pairs");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || a >= left || b < 0 || b >= right)
            throw FormatError("relation: pair [" + std::to_string(a) + "," + std::to_string(b) +
                              "] out of range");
        z.add(a, b);
    }
    return z;
}

json tau_to_json(const LiteralSet& tau) {
    return json{{"pos", tau.pos}, {"neg", tau.neg}};
}

LiteralSet tau_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("tau: expected an object");
    LiteralSet tau;
    for (const char* field : {"pos", "neg"}) {
        if (!j.contains(field)) continue;
        if (!j[field].is_array())
            throw FormatError(std::string("tau: field \"") + field + "\" must be an array");
        for (const auto& e : j[field]) {
            if (!e.is_string())
                throw FormatError(std::string("tau: field \"") + field +
                                  "\" entries must be variable names");
            (field[0] == 'p' ? tau.pos : tau.neg).insert(e.get<std::string>());
        }
    }
    return tau;
}

json product_to_json(const BisimProduct& p) {
    json carrier = json::array();
    for (auto [a, b] : p.carrier) carrier.push_back(json::array({a, b}));
    json pi1 = json::array(), pi2 = json::array();
    for (auto [a, b] : p.carrier) {
        pi1.push_back(a);
        pi2.push_back(b);
    }
    json j = frame_to_json(Frame{p.frame});
    j["carrier"] = std::move(carrier);
    j["pi1"] = std::move(pi1);
    j["pi2"] = std::move(pi2);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace modlab::io
