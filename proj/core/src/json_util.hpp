#pragma once

#include <string_view>

#include "geo/alphabet.hpp"
#include "json.hpp"

namespace geo::detail {

using Json = nlohmann::ordered_json;

Json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const Json& j);

Json word_to_json(const Alphabet& a, const Word& w);
Word word_from_json(const Alphabet& a, const Json& j);

/// Parses text, rethrowing syntax errors as InputError with the byte offset.
Json parse_json(std::string_view text);

/// Field access with InputError diagnostics naming the missing key.
const Json& field(const Json& j, const char* key);

}  // namespace geo::detail
