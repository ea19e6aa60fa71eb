# zpm_actions/__main__.py
import sys

from zpm_actions.cli import main

sys.exit(main())
