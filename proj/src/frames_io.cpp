#include "folia/frames_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace folia {

namespace {

using nlohmann::json;

std::string word_to_tokens(const Word& w, int n) {
    std::string out;
    for (size_t k = 0; k < w.size(); ++k) {
        int s = static_cast<unsigned char>(w[k]);
        if (k) out += ' ';
        if (s < n) out += "x" + std::to_string(s + 1);
        else out += "z" + std::to_string(s - n + 1);
    }
    return out;
}

Word tokens_to_word(const std::string& text, int n, int m) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'z'))
            throw parse_error("bad jet word token: " + tok);
        int idx = std::stoi(tok.substr(1)) - 1;
        if (tok[0] == 'x') {
            if (idx < 0 || idx >= n) throw parse_error("horizontal index out of range: " + tok);
            w.push_back(static_cast<char>(idx));
        } else {
            if (idx < 0 || idx >= m) throw parse_error("vertical index out of range: " + tok);
            w.push_back(static_cast<char>(n + idx));
        }
    }
    if (!std::is_sorted(w.begin(), w.end()))
        throw parse_error("jet word not normally ordered: " + text);
    return w;
}

json rational_to_json(const Q& q) {
    if (q.den() == 1) return json(q.num());
    return json(q.str());
}

Q rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Q(j.get<long long>());
    if (j.is_string()) return Q::from_string(j.get<std::string>());
    throw parse_error("expected integer or \"p/q\" string at " + where);
}

json jet_to_json(const Jet& jt, int n) {
    if (jt.is_constant()) return rational_to_json(jt.value());
    json comps = json::object();
    for (const auto& [w, c] : jt.comps) comps[word_to_tokens(w, n)] = rational_to_json(c);
    return json{{"order", jt.order}, {"comps", comps}};
}

Jet jet_from_json(const json& j, int n, int m, const std::string& where) {
    if (j.is_number_integer() || j.is_string()) return Jet(rational_from_json(j, where));
    if (!j.is_object() || !j.contains("order") || !j.contains("comps"))
        throw parse_error("expected number, \"p/q\", or {order, comps} at " + where);
    Jet out = Jet::zero(j["order"].get<int>());
    for (const auto& [key, val] : j["comps"].items()) {
        Word w = tokens_to_word(key, n, m);
        if (static_cast<int>(w.size()) > out.order)
            throw parse_error("jet word longer than order at " + where);
        out.set(w, rational_from_json(val, where + "." + key));
    }
    return out;
}

using Box = std::vector<std::vector<std::vector<Jet>>>;

json box_to_json(const Box& box, int n) {
    json out = json::array();
    for (const auto& a : box) {
        json ja = json::array();
        for (const auto& b : a) {
            json jb = json::array();
            for (const auto& c : b) jb.push_back(jet_to_json(c, n));
            ja.push_back(jb);
        }
        out.push_back(ja);
    }
    return out;
}

void box_from_json(Box& box, const json& j, int n, int m, size_t d0, size_t d1, size_t d2,
                   const std::string& name) {
    if (!j.is_array() || j.size() != d0)
        throw parse_error(name + ": expected array of length " + std::to_string(d0));
    for (size_t a = 0; a < d0; ++a) {
        const json& ja = j[a];
        if (!ja.is_array() || ja.size() != d1)
            throw parse_error(name + "[" + std::to_string(a) + "]: expected array of length " +
                              std::to_string(d1));
        for (size_t b = 0; b < d1; ++b) {
            const json& jb = ja[b];
            if (!jb.is_array() || jb.size() != d2)
                throw parse_error(name + "[" + std::to_string(a) + "][" + std::to_string(b) +
                                  "]: expected array of length " + std::to_string(d2));
            for (size_t c = 0; c < d2; ++c) {
                std::string where = name + "[" + std::to_string(a) + "][" + std::to_string(b) +
                                    "][" + std::to_string(c) + "]";
                box[a][b][c] = jet_from_json(jb[c], n, m, where);
            }
        }
    }
}

} // namespace

std::string frame_spec_to_json(const FrameSpec& spec) {
    json j;
    j["schema"] = 1;
    j["name"] = spec.name;
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["homogeneous"] = spec.homogeneous;
    j["compact"] = spec.compact_claim;
    j["omega"] = box_to_json(spec.structure.omega, spec.n);
    j["gamma"] = box_to_json(spec.structure.gamma, spec.n);
    j["beta"] = box_to_json(spec.structure.beta, spec.n);
    j["sigma"] = box_to_json(spec.structure.sigma, spec.n);
    return j.dump(2);
}

FrameSpec frame_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    FrameSpec spec;
    if (!j.contains("n") || !j.contains("m")) throw parse_error("missing n or m");
    spec.n = j["n"].get<int>();
    spec.m = j["m"].get<int>();
    if (spec.n < 1 || spec.m < 1 || spec.n + spec.m > 12)
        throw parse_error("n, m out of supported range");
    spec.name = j.value("name", std::string("user_model"));
    spec.homogeneous = j.value("homogeneous", false);
    spec.compact_claim = j.value("compact", false);
    spec.structure = StructureFunctions::zeros(spec.n, spec.m, kExactOrder);
    size_t n = spec.n, m = spec.m;
    if (j.contains("omega")) box_from_json(spec.structure.omega, j["omega"], spec.n, spec.m, n, n, n, "omega");
    if (j.contains("gamma")) box_from_json(spec.structure.gamma, j["gamma"], spec.n, spec.m, n, n, m, "gamma");
    if (j.contains("beta")) box_from_json(spec.structure.beta, j["beta"], spec.n, spec.m, n, m, m, "beta");
    if (j.contains("sigma")) box_from_json(spec.structure.sigma, j["sigma"], spec.n, spec.m, n, m, n, "sigma");
    return spec;
}

FrameSpec frame_spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return frame_spec_from_json(ss.str());
}

} // namespace folia
