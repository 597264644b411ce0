#include "urel/columns.hpp"

#include "urel/errors.hpp"

namespace urel {

std::string baseName(const std::string& qualified) {
    std::size_t dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

namespace {

std::size_t findColumn(const std::vector<std::string>& attrs, const std::string& name,
                       bool* ambiguous) {
    std::size_t found = attrs.size();
    bool qualified = name.find('.') != std::string::npos;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        bool match = attrs[i] == name || (!qualified && baseName(attrs[i]) == name);
        if (!match) continue;
        if (found != attrs.size()) {
            *ambiguous = true;
            return attrs.size();
        }
        found = i;
    }
    *ambiguous = false;
    return found;
}

}  // namespace

std::size_t resolveColumn(const std::vector<std::string>& attrs, const std::string& name) {
    bool ambiguous = false;
    std::size_t i = findColumn(attrs, name, &ambiguous);
    if (ambiguous) throw SchemaError("ambiguous column reference '" + name + "'");
    if (i == attrs.size()) throw UnknownAttribute(name);
    return i;
}

bool columnResolves(const std::vector<std::string>& attrs, const std::string& name) {
    bool ambiguous = false;
    return findColumn(attrs, name, &ambiguous) != attrs.size() && !ambiguous;
}

}  // namespace urel
