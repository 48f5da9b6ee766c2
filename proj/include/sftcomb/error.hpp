#pragma once

#include <stdexcept>
#include <string>

namespace sftcomb {

// Thrown on violated preconditions and unusable inputs. Validation-style
// operations return reports instead of throwing; see the per-module headers.
class Error : public std::runtime_error {
  public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw Error(msg);
}

}  // namespace sftcomb
