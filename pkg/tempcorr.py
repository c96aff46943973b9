# tempcorr - launcher for the command-line interface in backend/
import os
import sys

BACKEND_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'backend')
sys.path.insert(0, BACKEND_DIR)

from main import main  # noqa: E402

if __name__ == '__main__':
    sys.exit(main())
