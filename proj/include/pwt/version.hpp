#ifndef PWT_VERSION_HPP
#define PWT_VERSION_HPP

namespace pwt {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pwt

#endif
