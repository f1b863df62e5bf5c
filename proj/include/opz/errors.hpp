#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opz {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The max-triangle constraint failed at the triple (j,k,l):
// time(j,l) > max(time(j,k), time(k,l)), absent pairs counting as infinite.
struct ConstraintViolation : Error {
    ConstraintViolation(std::uint32_t j_, std::uint32_t k_, std::uint32_t l_)
        : Error("max-triangle violated at (" + std::to_string(j_) + "," +
                std::to_string(k_) + "," + std::to_string(l_) + ")"),
          j(j_), k(k_), l(l_) {}
    std::uint32_t j, k, l;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line_)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
    int line;
};

struct SupportTooLarge : Error {
    SupportTooLarge(std::size_t size_, std::size_t limit_)
        : Error("support size " + std::to_string(size_) +
                " exceeds canonicalization limit " + std::to_string(limit_)),
          size(size_), limit(limit_) {}
    std::size_t size, limit;
};

struct NotAMember : Error {
    NotAMember() : Error("process is not a member of the family") {}
};

struct NoClosedForm : Error {
    explicit NoClosedForm(const std::string& what_) : Error(what_) {}
};

struct SupportOutOfWindow : Error {
    explicit SupportOutOfWindow(std::uint32_t elem_, unsigned window_)
        : Error("element " + std::to_string(elem_) + " outside model window " +
                std::to_string(window_)),
          elem(elem_), window(window_) {}
    std::uint32_t elem;
    unsigned window;
};

struct InvalidModel : Error {
    explicit InvalidModel(const std::string& what_) : Error(what_) {}
};

struct PreconditionViolation : Error {
    explicit PreconditionViolation(const std::string& what_) : Error(what_) {}
};

}  // namespace opz
