#ifndef SCROLLBIO_UTIL_ERROR_H_
#define SCROLLBIO_UTIL_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace scrollbio {

// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A lookup by id failed.
class NotFound : public Error {
 public:
  NotFound(const std::string &kind, const std::string &id)
      : Error(kind + " not found: " + id), kind_(kind), id_(id) {}

  const std::string &kind() const { return kind_; }
  const std::string &id() const { return id_; }

 private:
  std::string kind_;
  std::string id_;
};

// Corpus ingestion failure. Carries the offending file, record and field
// when known, or the list of dangling references.
class LoadError : public Error {
 public:
  LoadError(std::string file, std::string record, std::string field,
            const std::string &message)
      : Error(Format(file, record, field, message)),
        file_(std::move(file)),
        record_(std::move(record)),
        field_(std::move(field)),
        message_(message) {}

  LoadError(std::vector<std::string> dangling, const std::string &message)
      : Error(FormatDangling(dangling, message)),
        message_(message),
        dangling_(std::move(dangling)) {}

  const std::string &file() const { return file_; }
  const std::string &record() const { return record_; }
  const std::string &field() const { return field_; }
  const std::string &message() const { return message_; }
  const std::vector<std::string> &dangling() const { return dangling_; }

 private:
  static std::string Format(const std::string &file, const std::string &record,
                            const std::string &field,
                            const std::string &message) {
    std::string s = file;
    if (!record.empty()) s += ": record " + record;
    if (!field.empty()) s += ": field " + field;
    return s + ": " + message;
  }

  static std::string FormatDangling(const std::vector<std::string> &ids,
                                    const std::string &message) {
    std::string s = message + ":";
    for (const auto &id : ids) s += " " + id;
    return s;
  }

  std::string file_;
  std::string record_;
  std::string field_;
  std::string message_;
  std::vector<std::string> dangling_;
};

}  // namespace scrollbio

#endif  // SCROLLBIO_UTIL_ERROR_H_
