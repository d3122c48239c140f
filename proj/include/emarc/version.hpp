#ifndef EMARC_VERSION_HPP
#define EMARC_VERSION_HPP

#include <string_view>

namespace emarc {

inline constexpr std::string_view kVersion = "0.1.0";

} // namespace emarc

#endif
