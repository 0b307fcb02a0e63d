#pragma once

// Scripted stand-ins for the machine: a CommandRunner that behaves like a
// host with sysctls and network interfaces, without touching anything real.

#include <cinttypes>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "evotune/command_runner.hpp"

namespace testsupport {

// Succeeds at everything, produces nothing, remembers every call.
class CountingRunner : public evotune::CommandRunner {
public:
    std::vector<evotune::CommandLine> log;

    evotune::CommandResult run(const evotune::CommandLine& cmd,
                               std::chrono::milliseconds) override {
        log.push_back(cmd);
        evotune::CommandResult res;
        res.exit_code = 0;
        return res;
    }
};

// A small in-memory host. Understands the exact command shapes the library
// renders (sysctl -n/-w, ip -o link show, ip link set, ifconfig) plus a
// canned netperf. Anything else exits 127.
class FakeSystemRunner : public evotune::CommandRunner {
public:
    struct Iface {
        std::string mtu = "1500";
        std::string qlen = "1000";
    };

    std::map<std::string, std::string> sysctls;
    std::map<std::string, Iface> ifaces;
    double netperf_mbps = 941.23;

    // Inspected state.
    std::vector<evotune::CommandLine> log;

    // Returns true to make this call fail (exit 1, stderr "injected failure").
    // Checked before the command is interpreted, so a failing write really
    // does not change the fake system.
    std::function<bool(const evotune::CommandLine&)> should_fail;

    evotune::CommandResult run(const evotune::CommandLine& cmd,
                               std::chrono::milliseconds) override {
        log.push_back(cmd);
        evotune::CommandResult res;
        if (should_fail && should_fail(cmd)) {
            res.exit_code = 1;
            res.stderr_text = "injected failure\n";
            return res;
        }
        const auto& argv = cmd.argv;
        if (argv.empty()) {
            res.stderr_text = "empty argv";
            return res;
        }

        if (argv[0] == "sysctl" && argv.size() == 3 && argv[1] == "-n") {
            auto it = sysctls.find(argv[2]);
            if (it == sysctls.end()) {
                res.exit_code = 255;
                res.stderr_text = "sysctl: cannot stat /proc/sys/" + argv[2] +
                                  ": No such file or directory\n";
                return res;
            }
            res.exit_code = 0;
            res.stdout_text = it->second + "\n";
            return res;
        }
        if (argv[0] == "sysctl" && argv.size() == 3 && argv[1] == "-w") {
            auto eq = argv[2].find('=');
            if (eq == std::string::npos) {
                res.exit_code = 255;
                res.stderr_text = "sysctl: malformed setting\n";
                return res;
            }
            std::string key = argv[2].substr(0, eq);
            std::string value = argv[2].substr(eq + 1);
            auto it = sysctls.find(key);
            if (it == sysctls.end()) {
                res.exit_code = 255;
                res.stderr_text = "sysctl: cannot stat /proc/sys/" + key +
                                  ": No such file or directory\n";
                return res;
            }
            it->second = value;
            res.exit_code = 0;
            res.stdout_text = key + " = " + value + "\n";
            return res;
        }

        if (argv[0] == "ip" && argv.size() == 6 && argv[1] == "-o" && argv[2] == "link" &&
            argv[3] == "show" && argv[4] == "dev") {
            auto it = ifaces.find(argv[5]);
            if (it == ifaces.end()) {
                res.exit_code = 1;
                res.stderr_text = "Device \"" + argv[5] + "\" does not exist.\n";
                return res;
            }
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "2: %s: <BROADCAST,MULTICAST,UP,LOWER_UP> mtu %s qdisc fq_codel "
                          "state UP mode DEFAULT group default qlen %s\\    link/ether "
                          "aa:bb:cc:dd:ee:ff brd ff:ff:ff:ff:ff:ff\n",
                          argv[5].c_str(), it->second.mtu.c_str(), it->second.qlen.c_str());
            res.exit_code = 0;
            res.stdout_text = buf;
            return res;
        }
        if (argv[0] == "ip" && argv.size() == 7 && argv[1] == "link" && argv[2] == "set" &&
            argv[3] == "dev") {
            auto it = ifaces.find(argv[4]);
            if (it == ifaces.end()) {
                res.exit_code = 1;
                res.stderr_text = "Cannot find device \"" + argv[4] + "\"\n";
                return res;
            }
            if (argv[5] == "mtu") {
                it->second.mtu = argv[6];
            } else if (argv[5] == "txqueuelen") {
                it->second.qlen = argv[6];
            } else {
                res.exit_code = 2;
                res.stderr_text = "Error: either \"dev\" is duplicate, or \"" + argv[5] +
                                  "\" is a garbage.\n";
                return res;
            }
            res.exit_code = 0;
            return res;
        }
        if (argv[0] == "ifconfig" && argv.size() == 4) {
            auto it = ifaces.find(argv[1]);
            if (it == ifaces.end()) {
                res.exit_code = 1;
                res.stderr_text = argv[1] + ": ERROR while getting interface flags: No such "
                                            "device\n";
                return res;
            }
            if (argv[2] == "mtu") {
                it->second.mtu = argv[3];
            } else if (argv[2] == "txqueuelen") {
                it->second.qlen = argv[3];
            } else {
                res.exit_code = 1;
                res.stderr_text = "ifconfig: bad argument '" + argv[2] + "'\n";
                return res;
            }
            res.exit_code = 0;
            return res;
        }

        if (argv[0] == "netperf") {
            char buf[512];
            std::snprintf(buf, sizeof buf,
                          "MIGRATED TCP STREAM TEST from 0.0.0.0 (0.0.0.0) port 0 AF_INET to "
                          "127.0.0.1 () port 0 AF_INET\n"
                          "Recv   Send    Send\n"
                          "Socket Socket  Message  Elapsed\n"
                          "Size   Size    Size     Time     Throughput\n"
                          "bytes  bytes   bytes    secs.    10^6bits/sec\n"
                          "\n"
                          " 87380  16384  16384    10.02     %.2f\n",
                          netperf_mbps);
            res.exit_code = 0;
            res.stdout_text = buf;
            return res;
        }

        res.exit_code = 127;
        res.stderr_text = argv[0] + ": command not found\n";
        return res;
    }
};

} // namespace testsupport
