#include "integra/exact/registry.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace integra {

namespace {

struct Names {
    std::mutex mu;
    std::deque<std::string> names;
};

Names& names() {
    static Names n;
    return n;
}

} // namespace

VarId Registry::intern(std::string_view name) {
    auto& n = names();
    std::lock_guard lock(n.mu);
    for (std::size_t i = 0; i < n.names.size(); ++i)
        if (n.names[i] == name) return static_cast<VarId>(i);
    if (n.names.size() >= kMaxVariables)
        throw std::length_error("variable registry is full");
    n.names.emplace_back(name);
    return static_cast<VarId>(n.names.size() - 1);
}

std::string Registry::name(VarId id) {
    auto& n = names();
    std::lock_guard lock(n.mu);
    if (id >= n.names.size()) throw std::out_of_range("unknown variable id");
    return n.names[id];
}

std::size_t Registry::size() {
    auto& n = names();
    std::lock_guard lock(n.mu);
    return n.names.size();
}

bool Registry::contains(std::string_view name) {
    auto& n = names();
    std::lock_guard lock(n.mu);
    for (const auto& s : n.names)
        if (s == name) return true;
    return false;
}

std::vector<VarId> vars(std::string_view stem, int count, int first) {
    std::vector<VarId> out;
    for (int i = 0; i < count; ++i)
        out.push_back(var(std::string(stem) + std::to_string(first + i)));
    return out;
}

} // namespace integra
