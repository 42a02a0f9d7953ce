#ifndef TWINSIGHT_ERRORS_HPP
#define TWINSIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twinsight {

// Input-file or argument problem, carries a human-readable location
// ("file.csv:12, column 3") when one is known.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
    ValidationError(const std::string &where, const std::string &what)
        : std::runtime_error(where + ": " + what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace twinsight

#endif
