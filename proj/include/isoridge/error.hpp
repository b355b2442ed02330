#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isoridge
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed raster input. Carries the byte offset where decoding failed.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace isoridge
