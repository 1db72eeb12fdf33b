#include "folia/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace folia {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["schema"] = schema;
    j["model"] = model;
    j["command"] = command;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["trials"] = c.trials;
        jc["max_residual"] = c.max_residual;
        jc["detail"] = c.detail;
        cs.push_back(jc);
    }
    j["checks"] = cs;
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << command << " " << model << "\n";
    for (const auto& [k, v] : params) os << "  " << k << " = " << v << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name;
        if (c.trials) os << "  trials=" << c.trials;
        if (!c.max_residual.empty()) os << "  max_residual=" << c.max_residual;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    for (const auto& n : notes) os << "  note: " << n << "\n";
    os << (all_pass() ? "  result: PASS" : "  result: FAIL") << "  wall=" << wall_ms << "ms\n";
    return os.str();
}

} // namespace folia
