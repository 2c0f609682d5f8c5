#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spacetime {

using SymbolId = std::uint32_t;

// Process-wide symbol table. Ids are stable for the life of the process.
SymbolId intern_symbol(std::string_view name);
const std::string& symbol_name(SymbolId id);

// Orders names so that embedded digit runs compare numerically: x2 < x10.
bool natural_less(std::string_view a, std::string_view b);
int natural_compare(std::string_view a, std::string_view b);

}  // namespace spacetime
