#include "evotune/command_runner.hpp"

#include <cerrno>
#include <cstring>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace evotune {

namespace {

void close_quiet(int fd) {
    if (fd >= 0) ::close(fd);
}

} // namespace

CommandResult ExecCommandRunner::run(const CommandLine& cmd, std::chrono::milliseconds timeout) {
    CommandResult result;
    if (cmd.argv.empty()) {
        result.stderr_text = "empty argv";
        return result;
    }

    int out_pipe[2] = {-1, -1};
    int err_pipe[2] = {-1, -1};
    if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
        close_quiet(out_pipe[0]);
        close_quiet(out_pipe[1]);
        result.stderr_text = std::string("pipe: ") + std::strerror(errno);
        return result;
    }

    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close_quiet(fd);
        result.stderr_text = std::string("fork: ") + std::strerror(errno);
        return result;
    }

    if (pid == 0) {
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close_quiet(fd);
        std::vector<char*> argv;
        argv.reserve(cmd.argv.size() + 1);
        for (const auto& a : cmd.argv) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        ::execvp(argv[0], argv.data());
        // Only reached when exec fails; match the shell's "command not found".
        ::fprintf(stderr, "exec %s: %s\n", argv[0], std::strerror(errno));
        ::_exit(127);
    }

    close_quiet(out_pipe[1]);
    close_quiet(err_pipe[1]);

    struct Stream {
        int fd;
        std::string* sink;
        bool open = true;
    };
    Stream streams[2] = {{out_pipe[0], &result.stdout_text},
                         {err_pipe[0], &result.stderr_text}};

    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buf[4096];
    while (streams[0].open || streams[1].open) {
        auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            ::kill(pid, SIGKILL);
            result.timed_out = true;
            break;
        }
        auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();

        pollfd fds[2];
        nfds_t nfds = 0;
        for (auto& s : streams) {
            if (!s.open) continue;
            fds[nfds].fd = s.fd;
            fds[nfds].events = POLLIN;
            ++nfds;
        }
        int rc = ::poll(fds, nfds, static_cast<int>(remaining));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) continue; // loop re-checks the deadline
        for (nfds_t i = 0; i < nfds; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            for (auto& s : streams) {
                if (!s.open || s.fd != fds[i].fd) continue;
                ssize_t n = ::read(s.fd, buf, sizeof buf);
                if (n > 0) {
                    s.sink->append(buf, static_cast<std::size_t>(n));
                } else if (n == 0 || (n < 0 && errno != EINTR)) {
                    s.open = false;
                }
            }
        }
    }

    close_quiet(streams[0].fd);
    close_quiet(streams[1].fd);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (result.timed_out) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

} // namespace evotune
