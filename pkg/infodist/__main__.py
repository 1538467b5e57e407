from infodist.cli.main import main

main()
