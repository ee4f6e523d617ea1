#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kgl {

// Minimal ordered JSON value. Keys keep insertion order and doubles are
// rendered with 17 significant digits, so serialized reports are stable byte
// for byte for identical inputs.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::vector<std::pair<std::string, Json>>;

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int n) : v_(static_cast<std::int64_t>(n)) {}
    Json(long n) : v_(static_cast<std::int64_t>(n)) {}
    Json(long long n) : v_(static_cast<std::int64_t>(n)) {}
    Json(unsigned n) : v_(static_cast<std::uint64_t>(n)) {}
    Json(unsigned long n) : v_(static_cast<std::uint64_t>(n)) {}
    Json(unsigned long long n) : v_(static_cast<std::uint64_t>(n)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(Array a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }

    Json& set(std::string key, Json value);  // object append
    Json& push(Json value);                  // array append

    bool is_object() const { return std::holds_alternative<Object>(v_); }
    bool is_array() const { return std::holds_alternative<Array>(v_); }
    const Json* find(const std::string& key) const;

    std::string dump(int indent = 0) const;  // indent 0 = compact

private:
    std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double,
                 std::string, Array, Object>
        v_;
    void write(std::string& out, int indent, int depth) const;
};

std::string format_double(double d);  // %.17g, non-finite mapped to null/"inf"

// Outcome of one verification suite. `runtime_ms` is console-only and never
// serialized, keeping reports byte-identical across runs of the same seed.
struct VerificationReport {
    std::string check;
    Json inputs = Json::object();
    long long n_samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::string metric_name;  // "max_residual", "min_value", ...
    double metric = 0.0;
    bool pass = false;
    Json details;  // optional structured extras
    double runtime_ms = 0.0;

    Json to_json() const;
    std::string to_json_string() const { return to_json().dump(2); }
};

}  // namespace kgl
