#pragma once

#include <string>
#include <string_view>

namespace telcokit::evalkit {

// Classic Porter stemmer over lowercase ASCII words. Non-alphabetic input
// is returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace telcokit::evalkit
