#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "stackvol/finite_groupoid.hpp"
#include "stackvol/morita.hpp"

namespace stackvol {

/// Keys keep insertion order so that emitted documents are stable.
using Json = nlohmann::ordered_json;

/// Throws InputError "<source>:<line>:<column>: ..." on malformed text.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

/// {"objects":[...], "arrows":[{"id","l","r"}], "identity":{object: arrow},
///  "inverse":{arrow: arrow}, "compose":[[g, h, gh]]}
/// Unknown ids and schema errors throw InputError; axioms are not checked.
FiniteGroupoid groupoid_from_json(const Json& doc);
Json groupoid_to_json(const FiniteGroupoid& g);

/// {"a":{object: "p/q"}, "b":{object: "p/q"}}; every object must appear.
WeightData weights_from_json(const Json& doc, const FiniteGroupoid& g);
Json weights_to_json(const WeightData& w, const FiniteGroupoid& g);

/// {"elements":[...], "leftAnchor":{element: object}, "rightAnchor":{...},
///  "leftAction":[[g, b, g.b]], "rightAction":[[b, h, b.h]]}
Bibundle bibundle_from_json(const Json& doc, const FiniteGroupoid& left, const FiniteGroupoid& right);
Json bibundle_to_json(const Bibundle& bundle, const FiniteGroupoid& left, const FiniteGroupoid& right);

}  // namespace stackvol
