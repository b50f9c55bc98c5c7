import sys

from psi_calculus.main import main

if __name__ == "__main__":
    sys.exit(main())
