"""Stand-in external component speaking the line protocol.

Usage: fake_component.py MODE, with MODE one of toggler, const-yes,
garbage, silent, exit.
"""

import sys


def main() -> int:
    mode = sys.argv[1] if len(sys.argv) > 1 else "toggler"
    state = 0
    for raw in sys.stdin:
        line = raw.strip()
        if line == "RESET":
            state = 0
            print("OK", flush=True)
            continue
        if not line.startswith("IN "):
            print(f"ERR unknown command {line}", flush=True)
            continue
        if mode == "silent":
            continue
        if mode == "exit":
            return 1
        if mode == "garbage":
            print("HELLO", flush=True)
            continue
        if mode == "const-yes":
            print("OUT yes", flush=True)
            continue
        print("OUT yes" if state == 0 else "OUT no", flush=True)
        state = 1 - state
    return 0


if __name__ == "__main__":
    sys.exit(main())
