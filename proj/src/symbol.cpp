#include "spacetime/symbol.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace spacetime {

namespace {

struct Table {
    std::shared_mutex mutex;
    std::deque<std::string> names;  // deque keeps references stable
    std::unordered_map<std::string, SymbolId> ids;
};

Table& table() {
    static Table t;
    return t;
}

}  // namespace

SymbolId intern_symbol(std::string_view name) {
    Table& t = table();
    std::string key(name);
    {
        std::shared_lock lock(t.mutex);
        auto it = t.ids.find(key);
        if (it != t.ids.end()) return it->second;
    }
    std::unique_lock lock(t.mutex);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
    auto id = static_cast<SymbolId>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(std::move(key), id);
    return id;
}

const std::string& symbol_name(SymbolId id) {
    Table& t = table();
    std::shared_lock lock(t.mutex);
    return t.names.at(id);
}

int natural_compare(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && a[i2] == '0') ++i2;
            while (j2 < b.size() && b[j2] == '0') ++j2;
            std::size_t ie = i2, je = j2;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            if (ie - i2 != je - j2) return ie - i2 < je - j2 ? -1 : 1;
            int c = a.substr(i2, ie - i2).compare(b.substr(j2, je - j2));
            if (c != 0) return c < 0 ? -1 : 1;
            if (ie - i != je - j) return ie - i < je - j ? -1 : 1;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
        ++i;
        ++j;
    }
    if (i == a.size() && j == b.size()) return 0;
    return i == a.size() ? -1 : 1;
}

bool natural_less(std::string_view a, std::string_view b) { return natural_compare(a, b) < 0; }

}  // namespace spacetime
