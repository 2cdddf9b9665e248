#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "scrollbio/api/router.h"
#include "scrollbio/api/server.h"
#include "scrollbio/api/session.h"
#include "scrollbio/corpus/json_codec.h"
#include "scrollbio/entity/resolve.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scrollbio;

namespace {

api::SessionConfig ConfigFrom(const std::string &path) {
  return path.empty() ? api::SessionConfig{} : api::LoadSessionConfig(path);
}

void WriteText(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string SafeName(const std::string &id) {
  std::string out;
  for (char c : id) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return out;
}

int Ingest(const std::string &data, bool check) {
  auto corpus = corpus::LoadCorpus(data);
  const auto &dbs = corpus->dbs();
  json summary{{"handscrolls", corpus->handscrolls().size()},
               {"persons", dbs.persons.size()},
               {"places", dbs.places.size()},
               {"eras", dbs.eras.entries().size()},
               {"events", dbs.events.size()},
               {"gallery_seals", dbs.seal_gallery.size()}};
  if (check) {
    int seals = 0, unmatched = 0, inscriptions = 0, unresolved = 0, ambiguous = 0;
    json warnings = json::array();
    for (const auto &[id, h] : corpus->handscrolls()) {
      auto stats = corpus::AggregateElementStats(*corpus, id);
      seals += stats.matched_seals + stats.unmatched_seals;
      unmatched += stats.unmatched_seals;
      inscriptions += int(h.inscriptions.size());
      for (const auto &link : entity::LinkMentions(*corpus, h)) {
        if (link.figure && !link.figure->resolved()) ++unresolved;
        if (link.figure && link.figure->ambiguous) ++ambiguous;
      }
      fs::path image = fs::path(data) / h.image_ref;
      if (!fs::exists(image)) warnings.push_back("missing image " + image.string() + " for " + id);
    }
    summary["seals"] = seals;
    summary["unmatched_seals"] = unmatched;
    summary["inscriptions"] = inscriptions;
    summary["unresolved_figure_mentions"] = unresolved;
    summary["ambiguous_figure_mentions"] = ambiguous;
    summary["warnings"] = warnings;
    summary["ok"] = true;
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int Index(const std::string &data, const std::string &config_path, std::string out) {
  auto config = ConfigFrom(config_path);
  auto corpus = corpus::LoadCorpus(data);
  if (out.empty()) out = (fs::path(data) / "index").string();
  fs::create_directories(out);
  json report = json::object();
  auto save = [&](const char *name, const similarity::LshIndex::Entries &entries) {
    auto idx = similarity::LshIndex::Build(entries, config.lsh);
    fs::path path = fs::path(out) / (std::string(name) + ".lsh");
    idx.Save(path.string());
    size_t buckets = 0;
    for (const auto &t : idx.buckets()) buckets += t.size();
    report[name] = {{"file", path.string()}, {"vectors", idx.size()}, {"dim", idx.dim()},
                    {"tables", idx.params().tables}, {"bits", idx.params().bits},
                    {"buckets", buckets}};
  };
  save("gallery", api::GalleryEntries(*corpus));
  save("painting", api::PaintingEntries(*corpus));
  std::cout << report.dump(2) << "\n";
  return 0;
}

std::vector<std::string> Targets(const corpus::Corpus &c, const std::string &id) {
  if (!id.empty()) {
    c.handscroll(id);
    return {id};
  }
  std::vector<std::string> all;
  for (const auto &[hid, h] : c.handscrolls()) all.push_back(hid);
  return all;
}

int Layout(const std::string &data, const std::string &config_path, const std::string &id,
           std::optional<int> target, const std::string &out) {
  api::Session session(corpus::LoadCorpus(data), ConfigFrom(config_path));
  for (const auto &hid : Targets(session.corpus(), id)) {
    json j = session.Layout(hid, target);
    fs::path base = fs::path(out) / SafeName(hid);
    WriteText(base.string() + ".layout.json", j.dump(2) + "\n");
    WriteText(base.string() + ".ring.png", session.RingPng(hid, target));
    std::cout << hid << " target " << j["target"] << " -> " << base.string() << ".{layout.json,ring.png}\n";
  }
  return 0;
}

int Biographies(const std::string &data, const std::string &config_path, const std::string &id,
                bool all, const std::string &out) {
  if (!all && id.empty()) throw InvalidArgument("biography: pass --all or --id");
  api::Session session(corpus::LoadCorpus(data), ConfigFrom(config_path));
  size_t n = 0;
  for (const auto &hid : Targets(session.corpus(), all ? std::string() : id)) {
    auto bio = session.GetBiography(hid);
    WriteText(fs::path(out) / (SafeName(hid) + ".biography.json"),
              biography::ToJson(bio).dump(2) + "\n");
    ++n;
  }
  std::cout << "wrote " << n << " biographies to " << out << "\n";
  return 0;
}

std::atomic<api::HttpServer *> g_server{nullptr};

void OnSignal(int) {
  if (auto *s = g_server.load()) s->Stop();
}

int Serve(const std::string &data, const std::string &config_path, const std::string &host, int port,
          const std::string &ui) {
  api::Session session(corpus::LoadCorpus(data), ConfigFrom(config_path));
  api::Router router(session);
  api::ServerOptions opts;
  opts.host = host;
  opts.port = port;
  opts.ui_dir = ui;
  api::HttpServer server(router, opts);
  int bound = server.Bind();
  std::cerr << json{{"event", "listening"}, {"host", host}, {"port", bound},
                    {"handscrolls", session.corpus().handscrolls().size()}}.dump()
            << std::endl;
  g_server = &server;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  server.Listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Handscroll biography engine"};
  app.require_subcommand(1);
  std::string data, config, id, out, host = "127.0.0.1", ui, index_out;
  bool check = false, all = false;
  int port = 8080;
  std::optional<int> target;

  auto *ingest = app.add_subcommand("ingest", "Load and validate a corpus directory");
  ingest->add_option("--data", data, "Corpus directory")->required();
  ingest->add_flag("--check", check, "Also resolve mentions and check images");

  auto *index = app.add_subcommand("index", "Build and save the LSH indexes");
  index->add_option("--data", data)->required();
  index->add_option("--config", config, "JSON configuration file");
  index->add_option("--out", index_out, "Output directory (default <data>/index)");

  auto *lay = app.add_subcommand("layout", "Write layout JSON and ring PNG");
  lay->add_option("--data", data)->required();
  lay->add_option("--config", config);
  lay->add_option("--id", id, "Handscroll id (default: all)");
  lay->add_option("--target", target, "Strip length in pixels");
  lay->add_option("--out", out, "Output directory")->default_val("layout_out");

  auto *bio = app.add_subcommand("biography", "Write biography JSON files");
  bio->add_option("--data", data)->required();
  bio->add_option("--config", config);
  bio->add_option("--id", id);
  bio->add_flag("--all", all, "Every handscroll, one file each");
  bio->add_option("--out", out, "Output directory")->default_val("biographies");

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--data", data)->required();
  serve->add_option("--config", config);
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--ui", ui, "Built UI bundle served under /ui");

  auto *conf = app.add_subcommand("config", "Print the effective configuration");
  conf->add_option("--config", config);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ingest) return Ingest(data, check);
    if (*index) return Index(data, config, index_out);
    if (*lay) return Layout(data, config, id, target, out);
    if (*bio) return Biographies(data, config, id, all, out);
    if (*serve) return Serve(data, config, host, port, ui);
    if (*conf) {
      std::cout << api::ToJson(ConfigFrom(config)).dump(2) << "\n";
      return 0;
    }
  } catch (const LoadError &e) {
    std::cerr << "load error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
