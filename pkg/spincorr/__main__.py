from spincorr.cli import main

raise SystemExit(main())
