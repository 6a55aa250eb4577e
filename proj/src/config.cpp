#include "cplifs/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cplifs/exact.hpp"

namespace cplifs {

namespace {

using nlohmann::json;

struct NumIn {
    double value;
    Rational exact;
    bool has_exact;
};

NumIn read_number(const json& j, const std::string& where) {
    if (j.is_number()) {
        double v = j.get<double>();
        // a binary double is itself a rational, so plain JSON numbers keep
        // exactness of what the tool actually received
        return {v, Rational(v), true};
    }
    if (j.is_string()) {
        auto r = parse_rational(j.get<std::string>());
        if (!r)
            throw std::invalid_argument("config: cannot parse number \"" +
                                        j.get<std::string>() + "\" at " + where);
        return {to_double(*r), *r, true};
    }
    throw std::invalid_argument("config: expected number or \"p/q\" string at " + where);
}

}  // namespace

Cplifs parse_system_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.contains("maps") || !doc["maps"].is_array())
        throw std::invalid_argument("config: missing \"maps\" array");

    std::vector<PLMap> maps;
    auto exact = std::make_shared<ExactSystem>();
    bool all_exact = true;

    int k = 0;
    for (const auto& jm : doc["maps"]) {
        std::string where = "maps[" + std::to_string(k) + "]";
        PLMap f;
        ExactPLMap ef;
        if (jm.contains("breakpoints"))
            for (const auto& jb : jm["breakpoints"]) {
                NumIn n = read_number(jb, where + ".breakpoints");
                f.breakpoints.push_back(n.value);
                ef.breakpoints.push_back(n.exact);
                all_exact = all_exact && n.has_exact;
            }
        if (!jm.contains("slopes"))
            throw std::invalid_argument("config: " + where + " missing \"slopes\"");
        for (const auto& js : jm["slopes"]) {
            NumIn n = read_number(js, where + ".slopes");
            f.slopes.push_back(n.value);
            ef.slopes.push_back(n.exact);
            all_exact = all_exact && n.has_exact;
        }
        {
            NumIn n = jm.contains("offset") ? read_number(jm["offset"], where + ".offset")
                                            : NumIn{0.0, Rational(0), true};
            f.offset = n.value;
            ef.offset = n.exact;
            all_exact = all_exact && n.has_exact;
        }
        maps.push_back(std::move(f));
        exact->maps.push_back(std::move(ef));
        ++k;
    }

    ValidationReport rep = validate(maps);
    if (!rep.ok()) throw std::invalid_argument("invalid CPLIFS:\n" + rep.str());
    if (all_exact)
        for (auto& ef : exact->maps) ef.finalize();
    return make_cplifs(std::move(maps), all_exact ? exact : nullptr);
}

Cplifs load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system_json(ss.str());
}

std::string system_to_json(const Cplifs& F) {
    json doc;
    doc["maps"] = json::array();
    for (const auto& f : F.maps) {
        json jm;
        jm["breakpoints"] = f.breakpoints;
        jm["slopes"] = f.slopes;
        jm["offset"] = f.offset;
        doc["maps"].push_back(jm);
    }
    return doc.dump(2);
}

}  // namespace cplifs
