#include "spacetime/error.hpp"

namespace spacetime {

namespace {

std::string with_position(const std::string& what, int line, int column) {
    if (line <= 0) {
        return column > 0 ? "column " + std::to_string(column) + ": " + what : what;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(with_position(what, line, column)), message_(what), line_(line), column_(column) {}

}  // namespace spacetime
