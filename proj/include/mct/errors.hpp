#pragma once

#include <stdexcept>
#include <string>

namespace mct {

/// Input text (specification or circuit file) violates its format.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// The specification admits no bijection on the basis states.
class unrealizable_error : public std::runtime_error {
public:
    explicit unrealizable_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mct
