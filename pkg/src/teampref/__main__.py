"""
__main__.py

Console entry point.

Created on 17 Oct 2026

@author: teampref contributors
"""

import sys

from teampref.app import TeamPref


def main():
    the_app = TeamPref()
    sys.exit(the_app.run())


if __name__ == "__main__":
    main()
