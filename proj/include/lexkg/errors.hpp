#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lexkg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidIri : public Error {
public:
    explicit InvalidIri(const std::string& text)
        : Error("invalid IRI: '" + text + "'") {}
};

class InvalidTerm : public Error {
public:
    using Error::Error;
};

class UnknownPrefix : public Error {
public:
    explicit UnknownPrefix(std::string label)
        : Error("unknown prefix '" + label + ":'"), label_(std::move(label)) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

/// Syntax error with a 1-based position inside the input.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string snippet)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column), message_(std::move(message)), snippet_(std::move(snippet)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& snippet() const noexcept { return snippet_; }

    /// Same error, with `source` (usually a file name) prepended to the text.
    ParseError in_source(const std::string& source) const {
        return ParseError(line_, column_, source + ": " + message_, snippet_);
    }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string snippet_;
};

class CyclicHierarchy : public Error {
public:
    explicit CyclicHierarchy(std::vector<std::string> cycle)
        : Error(describe(cycle)), cycle_(std::move(cycle)) {}
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    static std::string describe(const std::vector<std::string>& cycle) {
        std::string out = "cyclic subclass hierarchy: ";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) out += " -> ";
            out += cycle[i];
        }
        return out;
    }
    std::vector<std::string> cycle_;
};

class UnknownClass : public Error {
public:
    explicit UnknownClass(const std::string& iri) : Error("unknown class <" + iri + ">") {}
};

class UnknownPredicate : public Error {
public:
    explicit UnknownPredicate(const std::string& iri)
        : Error("unknown predicate <" + iri + ">") {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(std::string section)
        : Error("empty input for section " + section), section_(std::move(section)) {}
    const std::string& section() const noexcept { return section_; }

private:
    std::string section_;
};

class EmptyResponse : public Error {
public:
    EmptyResponse() : Error("generator returned an empty response") {}
};

/// Transport-level failure talking to a generation backend.
class BackendError : public Error {
public:
    using Error::Error;
};

class DuplicateId : public Error {
public:
    explicit DuplicateId(const std::string& id) : Error("duplicate document id '" + id + "'") {}
};

class MalformedRecord : public Error {
public:
    using Error::Error;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus is empty") {}
    explicit EmptyCorpus(const std::string& what) : Error(what) {}
};

class StateFingerprintMismatch : public Error {
public:
    StateFingerprintMismatch(const std::string& stored, const std::string& current)
        : Error("run state fingerprint " + stored + " does not match current configuration " +
                current + "; refusing to resume") {}
};

class IoError : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    EmptySample() : Error("sample is empty") {}
};

class QueryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace lexkg
