/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_VERSION_HPP
#define METRICDECOMP_VERSION_HPP

namespace mdc {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
