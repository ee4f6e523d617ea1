#include "kgl/germ_io.hpp"

#include <json.hpp>

#include "kgl/error.hpp"

namespace kgl::io {

namespace {

using nlohmann::json;

std::complex<double> complex_from(const json& j, const char* name,
                                  std::vector<ValidationIssue>& issues) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    issues.push_back({"InvalidParameter",
                      std::string(name) + " must be a number or [re, im] pair"});
    return {0.0, 0.0};
}

std::vector<std::complex<double>> complex_list_from(const json& j, const char* name,
                                                    std::vector<ValidationIssue>& issues) {
    std::vector<std::complex<double>> out;
    if (!j.is_array()) {
        issues.push_back({"InvalidParameter", std::string(name) + " must be an array"});
        return out;
    }
    for (const auto& entry : j) out.push_back(complex_from(entry, name, issues));
    return out;
}

Json complex_to(const std::complex<double>& z) {
    return Json::array().push(z.real()).push(z.imag());
}

Json complex_list_to(const std::vector<std::complex<double>>& v) {
    Json arr = Json::array();
    for (const auto& z : v) arr.push(complex_to(z));
    return arr;
}

}  // namespace

ValidationResult germ_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("ParseError", e.what());
    }
    ValidationResult r;
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
        r.issues.push_back({"InvalidParameter", "missing \"family\" string"});
        return r;
    }
    const std::string family = j["family"].get<std::string>();

    auto require_int = [&](const char* name, long long fallback) -> long long {
        if (!j.contains(name) || !j[name].is_number_integer()) {
            r.issues.push_back({"InvalidParameter",
                                std::string("missing integer field \"") + name + "\""});
            return fallback;
        }
        return j[name].get<long long>();
    };

    if (family == "enoki") {
        if (!j.contains("alpha")) {
            r.issues.push_back({"InvalidParameter", "missing \"alpha\""});
            return r;
        }
        const auto alpha = complex_from(j["alpha"], "alpha", r.issues);
        const long long s = require_int("s", 1);
        std::vector<std::complex<double>> q;
        if (j.contains("Q")) q = complex_list_from(j["Q"], "Q", r.issues);
        if (!r.ok()) return r;
        return validate_enoki(alpha, s, std::move(q));
    }
    if (family == "intermediate") {
        const long long p = require_int("p", 2);
        const long long s = require_int("s", 1);
        std::complex<double> lambda{1.0, 0.0};
        if (j.contains("lambda")) lambda = complex_from(j["lambda"], "lambda", r.issues);
        std::vector<std::complex<double>> low;
        if (j.contains("low")) low = complex_list_from(j["low"], "low", r.issues);
        std::complex<double> a{0.0, 0.0};
        if (j.contains("a")) a = complex_from(j["a"], "a", r.issues);
        if (!r.ok()) return r;
        return validate_intermediate(p, s, lambda, std::move(low), a);
    }
    if (family == "ih") {
        if (!j.contains("word") || !j["word"].is_string()) {
            r.issues.push_back({"InvalidParameter", "missing \"word\" string"});
            return r;
        }
        return validate_ih(j["word"].get<std::string>());
    }
    r.issues.push_back({"InvalidParameter", "unknown family \"" + family + "\""});
    return r;
}

Json germ_to_json(const Germ& g) {
    Json j = Json::object();
    if (const auto* e = std::get_if<EnokiGerm>(&g)) {
        j.set("family", "enoki");
        j.set("alpha", complex_to(e->alpha));
        j.set("s", e->s);
        j.set("Q", complex_list_to(e->q.coeffs));
    } else if (const auto* im = std::get_if<IntermediateGerm>(&g)) {
        j.set("family", "intermediate");
        j.set("p", im->p);
        j.set("s", im->s);
        j.set("lambda", complex_to(im->lambda));
        j.set("low", complex_list_to(im->low));
        j.set("a", complex_to(im->a));
    } else {
        const auto& ih = std::get<IHGerm>(g);
        j.set("family", "ih");
        j.set("word", ih.word.letters);
    }
    return j;
}

kcone::PeriodicFunction psi_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("ParseError", e.what());
    }
    if (!j.is_object() || !j.contains("period") || !j["period"].is_number())
        throw Error("InvalidParameter", "psi needs a numeric \"period\"");
    kcone::PeriodicFunction psi;
    psi.period = j["period"].get<double>();
    if (!(psi.period > 0.0)) throw Error("InvalidParameter", "psi period must be positive");
    if (j.contains("a0")) psi.a0 = j["a0"].get<double>();
    if (j.contains("harmonics")) {
        if (!j["harmonics"].is_array())
            throw Error("InvalidParameter", "\"harmonics\" must be an array of [a_k, b_k]");
        for (const auto& h : j["harmonics"]) {
            if (!h.is_array() || h.size() != 2 || !h[0].is_number() || !h[1].is_number())
                throw Error("InvalidParameter", "harmonic entries must be [a_k, b_k] pairs");
            psi.harmonics.emplace_back(h[0].get<double>(), h[1].get<double>());
        }
    }
    return psi;
}

Json psi_to_json(const kcone::PeriodicFunction& psi) {
    Json j = Json::object();
    j.set("period", psi.period);
    j.set("a0", psi.a0);
    Json harm = Json::array();
    for (const auto& [a, b] : psi.harmonics) harm.push(Json::array().push(a).push(b));
    j.set("harmonics", harm);
    return j;
}

Json eigen_to_json(const EigenData& ed) {
    Json j = Json::object();
    j.set("lambda1", ed.lambda1);
    j.set("lambda2", ed.lambda2);
    j.set("v1", Json::array().push(1.0).push(ed.beta1));
    j.set("v2", Json::array().push(1.0).push(ed.beta2));
    j.set("det", ed.det);
    j.set("disc", ed.disc);
    return j;
}

}  // namespace kgl::io
