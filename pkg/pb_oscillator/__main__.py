import sys

from pb_oscillator.cli import main

sys.exit(main())
