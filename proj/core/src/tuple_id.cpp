#include "urel/tuple_id.hpp"

#include "urel/errors.hpp"

namespace urel {

TupleId TupleId::concatenated(const TupleId& other) const {
    std::vector<TidAtom> atoms = atoms_;
    atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
    return TupleId(std::move(atoms));
}

TupleId TupleId::retagged(const std::string& prefix) const {
    std::vector<TidAtom> atoms = atoms_;
    for (auto& a : atoms) a.tag = prefix + "#" + a.tag;
    return TupleId(std::move(atoms));
}

bool TupleId::canonicalLess(const TupleId& other) const {
    std::size_t n = std::min(atoms_.size(), other.atoms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!(atoms_[i] == other.atoms_[i])) return atoms_[i].canonicalLess(other.atoms_[i]);
    }
    return atoms_.size() < other.atoms_.size();
}

std::string TupleId::serialize() const {
    std::string out;
    for (const auto& a : atoms_) {
        if (!out.empty()) out += '|';
        out += a.tag;
        out += ':';
        out += a.id.toString();
    }
    return out;
}

TidAtom TupleId::parseAtom(const std::string& text) {
    std::size_t colon = text.rfind(':');
    if (colon == std::string::npos)
        throw IoError("malformed tuple-id atom '" + text + "' (expected tag:id)");
    return TidAtom{text.substr(0, colon), Value::parse(text.substr(colon + 1))};
}

std::size_t TupleIdHash::operator()(const TupleId& t) const {
    std::size_t h = 0;
    ValueHash vh;
    for (const auto& a : t.atoms()) {
        h = h * 37 + std::hash<std::string>{}(a.tag);
        h = h * 37 + vh(a.id);
    }
    return h;
}

}  // namespace urel
