#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coper {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (bad UTF-8, empty titles, ...).
class InputError : public Error {
  public:
    using Error::Error;
};

/// Missing or invalid configuration and resource files.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
  public:
    using Error::Error;
};

class TaggingError : public Error {
  public:
    TaggingError(const std::string& what, std::string token)
        : Error(what + " (token '" + token + "')"), m_token(std::move(token))
    {}

    const std::string& token() const noexcept { return m_token; }

  private:
    std::string m_token;
};

class IngestionError : public Error {
  public:
    using Error::Error;
};

class EmptyIndexError : public Error {
  public:
    using Error::Error;
};

class LookupError : public Error {
  public:
    using Error::Error;
};

class ShapeError : public Error {
  public:
    using Error::Error;
};

class EmbeddingError : public Error {
  public:
    explicit EmbeddingError(const std::string& what, std::string doc_id = {})
        : Error(doc_id.empty() ? what : what + " (document '" + doc_id + "')"),
          m_doc_id(std::move(doc_id))
    {}

    const std::string& doc_id() const noexcept { return m_doc_id; }

  private:
    std::string m_doc_id;
};

/// Argument outside its mathematical domain, e.g. omega not in [0,1].
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Index files built from different corpus snapshots were combined.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), m_line(line)
    {}

    std::size_t line() const noexcept { return m_line; }

  private:
    std::size_t m_line;
};

class BuildError : public Error {
  public:
    BuildError(std::string stage, std::string doc_id, const std::string& what)
        : Error("build stage '" + stage + "'" + (doc_id.empty() ? "" : " doc '" + doc_id + "'") +
                ": " + what),
          m_stage(std::move(stage)),
          m_doc_id(std::move(doc_id))
    {}

    const std::string& stage() const noexcept { return m_stage; }
    const std::string& doc_id() const noexcept { return m_doc_id; }

  private:
    std::string m_stage;
    std::string m_doc_id;
};

}  // namespace coper
