#pragma once

// Runs the ladder executable through the shell and captures its streams.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// args is appended verbatim to the executable path; stderr goes to a scratch file.
inline Result run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string err_path = "ladder_cli_stderr_" + std::to_string(++counter) + ".txt";
  const std::string command = env + (env.empty() ? "" : " ") + LADDER_CLI_PATH + " " + args + " 2>" + err_path;
  Result result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = slurp(err_path);
  std::remove(err_path.c_str());
  return result;
}

}  // namespace cli
