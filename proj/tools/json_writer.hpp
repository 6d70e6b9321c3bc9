#pragma once

#include <json.hpp>
#include <string>

namespace jacobi::cli {

using Json = nlohmann::ordered_json;

/// Compact serialization with every float printed to 17 significant digits
/// and non-finite floats as null. Key order is insertion order.
std::string dump(const Json& j);

/// %.17g, with "inf", "-inf", "nan" for non-finite values and "0" for either signed zero.
std::string format_real(double x);

}  // namespace jacobi::cli
