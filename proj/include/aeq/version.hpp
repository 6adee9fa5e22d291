#ifndef AEQ_VERSION_HPP_
#define AEQ_VERSION_HPP_

namespace aeq {
inline constexpr char const* kVersion = "0.1.0";
}

#endif  // AEQ_VERSION_HPP_
