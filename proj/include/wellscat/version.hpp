#pragma once

namespace wellscat {

inline constexpr const char* version_string = "wellscat 0.1.0";

} // namespace wellscat
