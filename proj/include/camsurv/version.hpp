#pragma once

namespace camsurv {

#ifndef CAMSURV_VERSION
#define CAMSURV_VERSION "0.1.0"
#endif

inline const char* version() { return CAMSURV_VERSION; }

}  // namespace camsurv
