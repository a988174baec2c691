#pragma once

#include <stdexcept>
#include <string>

namespace decoy {

// Error categories. The C ABI maps these 1:1 onto negative status codes, so
// keep the ordering stable.
enum class Errc {
    invalid_argument = 1, // caller violated a documented precondition
    io,                   // file missing / unreadable / unwritable
    parse,                // malformed input text
    validation,           // well-formed input that violates a semantic rule
    contract,             // API misuse detected at runtime (bad handle state)
    model,                // training / inference failure
    internal,             // bug trap; should not be reachable
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), m_code(code) {}
    Errc code() const { return m_code; }

  private:
    Errc m_code;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
    if(!cond)
        raise(code, msg);
}

} // namespace decoy
