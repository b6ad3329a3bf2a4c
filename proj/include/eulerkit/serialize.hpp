#pragma once

#include <span>
#include <string>
#include <string_view>

#include "eulerkit/error.hpp"
#include "eulerkit/linode.hpp"
#include "eulerkit/polyroots.hpp"
#include "json.hpp"

namespace eulerkit::io {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number at 17 significant digits; NaN and
/// infinities become null. Keys keep insertion order, so equal documents give equal bytes.
std::string dump(const Json& doc, int indent = 2);

/// Throws InvalidInput with the parser's message on malformed text.
Json parse(std::string_view text);

/// {order, modes: [{re, im, poly: [[re, im], ...]}], constants: [...]}
Json solution_to_json(const linode::ParticularSolution& sol);

/// Inverse of solution_to_json. The stored mode polynomials must equal the ones the
/// constants generate, bit for bit; anything else is InvalidInput.
linode::ParticularSolution solution_from_json(const Json& doc);

/// [{re, im, mult}, ...]
Json roots_to_json(std::span<const polyroots::RootCluster> clusters);

/// {kind, message} plus the structured fields of the concrete error type.
Json error_to_json(const Error& err);

/// Number or null for a non-finite value.
Json number(double v);

}  // namespace eulerkit::io
