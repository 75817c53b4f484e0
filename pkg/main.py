#!/usr/bin/env python3
"""
Точка входа командной строки.
Импортирует и запускает диспетчер команд из cli.py
"""

import sys

if __name__ == "__main__":
    from cli import run_cli

    try:
        sys.exit(run_cli())
    except KeyboardInterrupt:
        print("\nПроверка остановлена пользователем", file=sys.stderr)
        sys.exit(130)
