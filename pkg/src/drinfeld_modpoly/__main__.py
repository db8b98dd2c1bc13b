"""Allow running as: python -m src.drinfeld_modpoly"""

from src.drinfeld_modpoly.cli import main

raise SystemExit(main())
