import typeguard
typeguard.install_import_hook('lib')
