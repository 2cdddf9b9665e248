#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include <sys/wait.h>

#include "httplib.h"
#include "scrollbio/entity/tagger.h"

namespace scrollbio::entity {
namespace {

// Splits "http://host:port/path" into the scheme-host-port part and path.
std::pair<std::string, std::string> SplitUrl(const std::string &url) {
  const size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw InvalidArgument("tagger url needs a scheme: " + url);
  const size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

TaggerPort HttpTagger(const std::string &url, int timeout_seconds) {
  auto [base, path] = SplitUrl(url);
  return [base, path, timeout_seconds](std::string_view chunk) {
    httplib::Client client(base);
    client.set_connection_timeout(timeout_seconds);
    client.set_read_timeout(timeout_seconds);
    const std::string body = nlohmann::json{{"text", std::string(chunk)}}.dump();
    auto res = client.Post(path, body, "application/json");
    if (!res) throw Error("POST " + base + path + ": " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw Error("POST " + base + path + ": status " + std::to_string(res->status));
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(std::string("tagger response is not JSON: ") + e.what());
    }
    return ParseTaggerResponse(j, chunk);
  };
}

TaggerPort SubprocessTagger(const std::string &command) {
  return [command](std::string_view chunk) {
    char path[] = "/tmp/scrollbio-tagger-XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) throw Error("cannot create tagger input file");
    close(fd);
    {
      std::ofstream out(path, std::ios::trunc);
      out << nlohmann::json{{"text", std::string(chunk)}}.dump();
    }
    const std::string cmd = command + " < '" + path + "'";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      std::remove(path);
      throw Error("cannot start tagger: " + command);
    }
    std::string output;
    char buf[4096];
    for (size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) output.append(buf, got);
    const int status = pclose(pipe);
    std::remove(path);
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw Error("tagger command failed: " + command);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(output);
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(std::string("tagger output is not JSON: ") + e.what());
    }
    return ParseTaggerResponse(j, chunk);
  };
}

}  // namespace scrollbio::entity
