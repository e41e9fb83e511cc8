#pragma once

// Minimal ordered JSON emitter. Numbers are written with 17 significant
// digits so that every double round-trips; non-finite values become null.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monosob {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out.push_back(c);
            }
        }
    }
    out.push_back('"');
    return out;
}

class JsonWriter {
public:
    JsonWriter& begin_object() { open('{'); return *this; }
    JsonWriter& end_object() { close('}'); return *this; }
    JsonWriter& begin_array() { open('['); return *this; }
    JsonWriter& end_array() { close(']'); return *this; }

    JsonWriter& key(std::string_view k) {
        separate();
        out_ += json_quote(k);
        out_.push_back(':');
        after_key_ = true;
        return *this;
    }

    JsonWriter& value(double v) { return raw(format_double(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(long long v) { return raw(std::to_string(v)); }
    JsonWriter& value(std::size_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(std::string_view s) { return raw(json_quote(s)); }
    JsonWriter& value(const char* s) { return raw(json_quote(s)); }
    JsonWriter& null() { return raw("null"); }

    JsonWriter& value(std::span<const double> xs) {
        begin_array();
        for (double x : xs) value(x);
        return end_array();
    }

    /// Splices already-serialized JSON.
    JsonWriter& raw(std::string_view text) {
        separate();
        out_ += text;
        return *this;
    }

    template <class T>
    JsonWriter& field(std::string_view k, const T& v) { key(k); return value(v); }

    const std::string& str() const noexcept { return out_; }

private:
    void separate() {
        if (after_key_) { after_key_ = false; return; }
        if (!first_.empty()) {
            if (!first_.back()) out_.push_back(',');
            first_.back() = false;
        }
    }
    void open(char c) {
        separate();
        out_.push_back(c);
        first_.push_back(true);
    }
    void close(char c) {
        out_.push_back(c);
        first_.pop_back();
    }

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

} // namespace monosob
