#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace urel {

enum class ValueTag { Integer, Decimal, String, Date };

// A tagged constant. Comparison (<, <=, ...) is defined within a tag only and
// throws TypeMismatch across tags; equality and the canonical ordering used
// for set semantics are total.
class Value {
public:
    Value() : tag_(ValueTag::Integer), int_(0) {}

    static Value integer(std::int64_t v);
    static Value decimal(double v);
    static Value string(std::string v);
    static Value date(std::string iso);

    // Infers the tag from the textual form: integer, decimal (with '.' or
    // exponent), date (YYYY-MM-DD), else string.
    static Value parse(const std::string& text);

    ValueTag tag() const { return tag_; }
    std::int64_t asInteger() const;
    double asDecimal() const;
    const std::string& asString() const;  // String and Date payloads

    // Query comparison: -1/0/+1 within a tag, TypeMismatch across tags.
    int compare(const Value& other) const;

    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }

    // Total order (tag first, payload second); used only for canonical row
    // ordering, never exposed as query semantics.
    bool canonicalLess(const Value& other) const;

    std::string toString() const;

private:
    ValueTag tag_;
    std::int64_t int_ = 0;
    double dec_ = 0.0;
    std::string str_;
};

struct ValueHash {
    std::size_t operator()(const Value& v) const;
};

}  // namespace urel
