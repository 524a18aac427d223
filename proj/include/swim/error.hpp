#pragma once

#include <stdexcept>
#include <string>

namespace swim {

// All swimnet failures surface as this type so callers can catch one thing.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace swim
