from .hlcli import main

main()
