#include "evotune/param_space.hpp"

#include <string_view>

namespace evotune {

namespace detail {
// Generated from the .params files in core/data at configure time.
const char* catalog_listing1_text();
const char* catalog_table2_text();
} // namespace detail

ParameterSpace builtin_catalog(std::string_view name) {
    if (name == "listing1-14") {
        return parse_param_file(detail::catalog_listing1_text());
    }
    if (name == "table2-27") {
        return parse_param_file(detail::catalog_table2_text());
    }
    throw UnknownCatalogError(std::string(name));
}

std::vector<std::string> builtin_catalog_names() {
    return {"listing1-14", "table2-27"};
}

} // namespace evotune
