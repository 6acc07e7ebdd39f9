#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace opm {

enum class Errc {
    EmptyName,
    DuplicateName,
    UnknownEntity,
    NotAnObject,
    NotAProcess,
    DuplicateState,
    IllegalEndpoints,
    SelfLink,
    AnchorsRefinement,
    AlreadyRefined,
    EmptyList,
    InvalidModel,
    UnknownDiagram,
    AmbiguousName,
    HasChildren,
};

const char* to_string(Errc code);

struct Error {
    Errc code;
    std::string message;
};

/// Outcome of a fallible operation: either a value or an Error.
template <typename T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error error) : v_(std::move(error)) {}
    Result(Errc code, std::string message) : v_(Error{code, std::move(message)}) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    const T& value() const& {
        assert(ok());
        return std::get<T>(v_);
    }
    T& value() & {
        assert(ok());
        return std::get<T>(v_);
    }
    T&& value() && {
        assert(ok());
        return std::get<T>(std::move(v_));
    }

    const Error& error() const {
        assert(!ok());
        return std::get<Error>(v_);
    }
    Errc code() const { return error().code; }

private:
    std::variant<T, Error> v_;
};

template <>
class Result<void> {
public:
    Result() = default;
    Result(Error error) : err_(std::move(error)), failed_(true) {}
    Result(Errc code, std::string message) : err_{code, std::move(message)}, failed_(true) {}

    bool ok() const { return !failed_; }
    explicit operator bool() const { return ok(); }

    const Error& error() const {
        assert(failed_);
        return err_;
    }
    Errc code() const { return error().code; }

private:
    Error err_{};
    bool failed_ = false;
};

} // namespace opm
