#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace testsupport {

/// Exit status of a shell command, or -1 if it did not exit normally.
inline int run_command(const std::string& cmd) {
  int raw = std::system(cmd.c_str());
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

/// Fresh scratch directory under TMPDIR (or /tmp).
inline std::string make_scratch_dir(const char* tag) {
  const char* base = std::getenv("TMPDIR");
  std::string tmpl = std::string(base ? base : "/tmp") + "/" + tag + "XXXXXX";
  std::string buf(tmpl);
  char* got = mkdtemp(buf.data());
  if (!got) {
    std::perror("mkdtemp");
    std::exit(1);
  }
  return buf;
}

inline int g_failures = 0;

inline void report(bool ok, const std::string& label) {
  if (!ok) ++g_failures;
  std::cout << (ok ? "  ok: " : "  FAILED: ") << label << "\n";
}

}  // namespace testsupport

#define CHECK_THAT_HOLDS(expr) ::testsupport::report((expr), #expr)
