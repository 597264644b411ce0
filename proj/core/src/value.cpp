#include "urel/value.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "urel/errors.hpp"

namespace urel {

namespace {

const char* tagName(ValueTag t) {
    switch (t) {
        case ValueTag::Integer: return "integer";
        case ValueTag::Decimal: return "decimal";
        case ValueTag::String: return "string";
        case ValueTag::Date: return "date";
    }
    return "?";
}

bool looksLikeInteger(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool looksLikeDecimal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool digits = false, dot = false, exp = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '.' && !dot && !exp) {
            dot = true;
        } else if ((c == 'e' || c == 'E') && digits && !exp) {
            exp = true;
            if (i + 1 < s.size() && (s[i + 1] == '-' || s[i + 1] == '+')) ++i;
        } else {
            return false;
        }
    }
    return digits && (dot || exp);
}

bool looksLikeDate(const std::string& s) {
    // YYYY-MM-DD
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// Shortest decimal text that round-trips to the same double, with a '.' or
// exponent kept so re-parsing stays in the Decimal tag.
std::string formatDecimal(double d) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, d);
        if (std::strtod(buf, nullptr) == d) break;
    }
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos && s.find("inf") == std::string::npos &&
        s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

}  // namespace

Value Value::integer(std::int64_t v) {
    Value r;
    r.tag_ = ValueTag::Integer;
    r.int_ = v;
    return r;
}

Value Value::decimal(double v) {
    Value r;
    r.tag_ = ValueTag::Decimal;
    r.dec_ = v;
    return r;
}

Value Value::string(std::string v) {
    Value r;
    r.tag_ = ValueTag::String;
    r.str_ = std::move(v);
    return r;
}

Value Value::date(std::string iso) {
    Value r;
    r.tag_ = ValueTag::Date;
    r.str_ = std::move(iso);
    return r;
}

Value Value::parse(const std::string& text) {
    if (looksLikeInteger(text)) return integer(std::strtoll(text.c_str(), nullptr, 10));
    if (looksLikeDecimal(text)) return decimal(std::strtod(text.c_str(), nullptr));
    if (looksLikeDate(text)) return date(text);
    return string(text);
}

std::int64_t Value::asInteger() const {
    if (tag_ != ValueTag::Integer) throw TypeMismatch("value is not an integer");
    return int_;
}

double Value::asDecimal() const {
    if (tag_ != ValueTag::Decimal) throw TypeMismatch("value is not a decimal");
    return dec_;
}

const std::string& Value::asString() const {
    if (tag_ != ValueTag::String && tag_ != ValueTag::Date)
        throw TypeMismatch("value is not a string or date");
    return str_;
}

int Value::compare(const Value& other) const {
    if (tag_ != other.tag_)
        throw TypeMismatch(std::string("cannot compare ") + tagName(tag_) + " with " +
                           tagName(other.tag_));
    switch (tag_) {
        case ValueTag::Integer:
            return int_ < other.int_ ? -1 : (int_ > other.int_ ? 1 : 0);
        case ValueTag::Decimal:
            return dec_ < other.dec_ ? -1 : (dec_ > other.dec_ ? 1 : 0);
        case ValueTag::String:
        case ValueTag::Date: {
            int c = str_.compare(other.str_);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
    }
    return 0;
}

bool Value::operator==(const Value& other) const {
    if (tag_ != other.tag_) return false;
    switch (tag_) {
        case ValueTag::Integer: return int_ == other.int_;
        case ValueTag::Decimal: return dec_ == other.dec_;
        case ValueTag::String:
        case ValueTag::Date: return str_ == other.str_;
    }
    return false;
}

bool Value::canonicalLess(const Value& other) const {
    if (tag_ != other.tag_) return static_cast<int>(tag_) < static_cast<int>(other.tag_);
    return compare(other) < 0;
}

std::string Value::toString() const {
    switch (tag_) {
        case ValueTag::Integer: return std::to_string(int_);
        case ValueTag::Decimal: return formatDecimal(dec_);
        case ValueTag::String:
        case ValueTag::Date: return str_;
    }
    return {};
}

std::size_t ValueHash::operator()(const Value& v) const {
    std::size_t h = static_cast<std::size_t>(v.tag()) * 0x9e3779b97f4a7c15ull;
    switch (v.tag()) {
        case ValueTag::Integer:
            h ^= std::hash<std::int64_t>{}(v.asInteger());
            break;
        case ValueTag::Decimal:
            h ^= std::hash<double>{}(v.asDecimal());
            break;
        case ValueTag::String:
        case ValueTag::Date:
            h ^= std::hash<std::string>{}(v.asString());
            break;
    }
    return h;
}

}  // namespace urel
