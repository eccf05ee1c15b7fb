#pragma once

#include <string>

#include <json.hpp>

namespace thmc::cli {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON with every floating-point number written as %.17g, so
/// doubles round-trip exactly. Non-finite numbers become null.
std::string dump_json(const Json& value);

}  // namespace thmc::cli
