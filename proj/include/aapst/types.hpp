#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aapst {

using Key = std::int64_t;
using Priority = std::int64_t;

// An (x, y) pair: x is the search key, y the heap priority.
struct KeyPair {
    Key x = 0;
    Priority y = 0;

    friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const KeyPair& p) {
    return os << '(' << p.x << ", " << p.y << ')';
}

enum class TreeErrc {
    DuplicateKey,
    NotFound,
    WrongVariant,
    CountOverflow,
};

const char* to_string(TreeErrc code) noexcept;

class TreeError : public std::runtime_error {
public:
    TreeError(TreeErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    TreeErrc code() const noexcept { return code_; }

private:
    TreeErrc code_;
};

}  // namespace aapst
