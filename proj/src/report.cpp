#include "kgl/report.hpp"

#include <cmath>
#include <cstdio>

namespace kgl {

std::string format_double(double d) {
    if (std::isnan(d)) return "null";
    if (std::isinf(d)) return d > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

Json& Json::set(std::string key, Json value) {
    auto& obj = std::get<Object>(v_);
    obj.emplace_back(std::move(key), std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    auto& arr = std::get<Array>(v_);
    arr.push_back(std::move(value));
    return *this;
}

const Json* Json::find(const std::string& key) const {
    if (!is_object()) return nullptr;
    for (const auto& [k, v] : std::get<Object>(v_))
        if (k == key) return &v;
    return nullptr;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void newline(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                write_escaped(out, v);
            } else if constexpr (std::is_same_v<T, Array>) {
                if (v.empty()) {
                    out += "[]";
                    return;
                }
                out += '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ',';
                    newline(out, indent, depth + 1);
                    v[i].write(out, indent, depth + 1);
                }
                newline(out, indent, depth);
                out += ']';
            } else if constexpr (std::is_same_v<T, Object>) {
                if (v.empty()) {
                    out += "{}";
                    return;
                }
                out += '{';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ',';
                    newline(out, indent, depth + 1);
                    write_escaped(out, v[i].first);
                    out += indent > 0 ? ": " : ":";
                    v[i].second.write(out, indent, depth + 1);
                }
                newline(out, indent, depth);
                out += '}';
            }
        },
        v_);
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    if (indent > 0) out += '\n';
    return out;
}

Json VerificationReport::to_json() const {
    Json j = Json::object();
    j.set("check", check);
    j.set("inputs", inputs);
    j.set("n_samples", n_samples);
    j.set("seed", seed);
    j.set("tolerance", tolerance);
    j.set(metric_name, metric);
    j.set("pass", pass);
    if (details.is_object() || details.is_array()) j.set("details", details);
    return j;
}

}  // namespace kgl
