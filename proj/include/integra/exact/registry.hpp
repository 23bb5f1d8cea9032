#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace integra {

inline constexpr std::size_t kMaxVariables = 32;

using VarId = std::uint8_t;

// Process-wide, append-only list of variable names. Ids are stable once
// handed out; exponent vectors are indexed by id.
class Registry {
public:
    static VarId intern(std::string_view name);
    static std::string name(VarId id);
    static std::size_t size();
    static bool contains(std::string_view name);
};

inline VarId var(std::string_view name) { return Registry::intern(name); }

std::vector<VarId> vars(std::string_view stem, int count, int first = 1);

} // namespace integra
